#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "banditlab/stats.hpp"

namespace banditlab::cli {

enum class Scale { kQuick, kPaper };

struct ReproduceOptions {
  std::string target;  // fig1 | fig2 | fig3 | thm1 | thm2 | thm5
  std::filesystem::path output;
  Scale scale = Scale::kQuick;
  std::uint64_t seed = 42;
  unsigned threads = 0;
};

const std::vector<std::string>& reproduce_targets();

/// Runs the canned experiment(s) for a target, writes CSV/SVG/report files
/// and a manifest into options.output, and prints one line per report.
std::vector<TestReport> reproduce(const ReproduceOptions& options, std::ostream& out);

}  // namespace banditlab::cli
