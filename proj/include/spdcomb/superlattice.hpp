#pragma once
#include <string>
#include <vector>

#include "spdcomb/types.hpp"

namespace spdcomb {

/// Geometry of a bi-periodically poled superlattice: n_gap + 1 stacks of n_nl
/// sign-alternating domains (each l_domain long), separated by n_gap unpoled
/// gaps of m_gap stack lengths each.
struct DesignSpec {
  int n_nl = 1;
  int n_gap = 0;
  int m_gap = 1;  // unused when n_gap == 0
  double l_domain_um = 5.16;
  double crystal_length_budget_um = 63500.0;
};

double stack_length_um(const DesignSpec& d);
double gap_length_um(const DesignSpec& d);

/// Total device length l_stack * (n_gap * m_gap + n_gap + 1); computed from
/// the counts, not by summing elements, so it is exact.
double design_length_um(const DesignSpec& d);

/// Domains plus gaps: (n_gap + 1) * n_nl + n_gap.
Index element_count(const DesignSpec& d);

struct ValidationReport {
  std::vector<std::string> violations;
  bool valid() const { return violations.empty(); }
};

/// Structural checks (positive counts/lengths) plus advisory ones: domain
/// length within a [1, 50] um sanity window and total length within the
/// crystal budget.
ValidationReport validate_design(const DesignSpec& d);

/// Throws InvalidInput on structural violations (n_nl < 1, n_gap < 0,
/// m_gap < 1, l_domain <= 0).  Budget/sanity findings stay advisory.
void require_structural(const DesignSpec& d);

/// Flattened element list in propagation order.  sign is +1/-1 for poled
/// domains and carries the (uniform) orientation of a gap.
struct DomainSequence {
  Arrayd length_um;
  Arrayd sign;
  Arrayd z_front_um;       // front edge of each element, z=0 at the entrance
  double total_length_um = 0;

  Index size() const { return length_um.size(); }
};

/// Expand a DesignSpec.  First stack starts on +1; signs alternate within a
/// stack; each gap takes the sign opposite to the preceding domain; the next
/// stack starts opposite to the gap.
DomainSequence build_sequence(const DesignSpec& d);

}  // namespace spdcomb
