#pragma once

namespace dplqr {
extern const char* kPaperScenarioJson;
}
