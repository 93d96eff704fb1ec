#pragma once

// Published success rates for the length-based attacks on the
// commuting-subgroup key agreement, and the desk-scale regression suite built on
// the cells that are cheap enough to rerun.

#include <span>
#include <vector>

#include "tlab/harness.hpp"

namespace tlab {

struct ReferenceCell {
    ReferenceRow row;
    int s = 3;
    int L = 256;
    AttackSettings attack;
    /// False where the published setup leaves the repetition filter unstated.
    bool filter_stated = true;
};

std::span<const ReferenceCell> published_cells();

/// Looks a cell up by id; throws std::out_of_range when absent.
const ReferenceCell& published_cell(std::string_view id);

struct RegressionCase {
    const ReferenceCell* cell = nullptr;
    /// The columns actually compared.
    ReferenceRow row;
    Tolerance tolerance;
    int trials = 1000;
};

std::vector<RegressionCase> desk_regression_suite();

}  // namespace tlab
