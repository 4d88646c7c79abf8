#pragma once

#include <optional>
#include <string>
#include <vector>

#include "robustmean/distributions.hpp"

namespace robustmean {

// Newline-delimited decimal floats; '#'-prefixed lines and blank lines are
// skipped. With `column`, each line is comma-split and the 0-indexed field is
// taken. Dot decimal separator only; unparsable input reports the line number.
std::vector<double> ingest(const std::string& path,
                           std::optional<int> column = std::nullopt);

DistributionSpec load_empirical(const std::string& path,
                                std::optional<int> column = std::nullopt);

}  // namespace robustmean
