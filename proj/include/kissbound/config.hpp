#pragma once

#include <cstdint>

// Default run parameters. Every value here can be overridden by a CLI flag;
// the only environment variable consulted anywhere is KISSBOUND_THREADS.
namespace kissbound::defaults {

inline constexpr double kRho = 1.755;
inline constexpr double kDelta = 0.0005;
inline constexpr double kTarget = 13.955;
inline constexpr double kFpSlack = 1e-9;

inline constexpr double kSearchStep = 0.05;
inline constexpr double kSearchTolerance = 1e-10;
inline constexpr int kSearchMaxEvaluations = 20000;

inline constexpr double kSweepLo = 1.562;
inline constexpr double kSweepHi = 1.928;
inline constexpr double kSweepStep = 0.001;
inline constexpr double kPruneThreshold = 14.0;

inline constexpr std::uint64_t kCheckpointInterval = 10'000'000;

inline constexpr double kTangencyTolerance = 1e-9;
inline constexpr double kGuardTolerance = 1e-12;

}  // namespace kissbound::defaults
