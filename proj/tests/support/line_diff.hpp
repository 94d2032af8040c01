#pragma once

#include <string>
#include <vector>

namespace netprofile::testing {

struct LineDiff {
    std::vector<std::string> removed;  // lines only in `before`
    std::vector<std::string> added;    // lines only in `after`
};

/// Longest-common-subsequence line diff.
LineDiff diff_lines(const std::string& before, const std::string& after);

}  // namespace netprofile::testing
