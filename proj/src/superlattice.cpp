#include "spdcomb/superlattice.hpp"

#include <sstream>

namespace spdcomb {

double stack_length_um(const DesignSpec& d) {
  return d.n_nl * d.l_domain_um;
}

double gap_length_um(const DesignSpec& d) {
  return d.m_gap * stack_length_um(d);
}

double design_length_um(const DesignSpec& d) {
  return stack_length_um(d) * (static_cast<double>(d.n_gap) * d.m_gap + d.n_gap + 1);
}

Index element_count(const DesignSpec& d) {
  return static_cast<Index>(d.n_gap + 1) * d.n_nl + d.n_gap;
}

ValidationReport validate_design(const DesignSpec& d) {
  ValidationReport r;
  auto flag = [&r](const std::string& s) { r.violations.push_back(s); };
  if (d.n_nl < 1) flag("n_nl must be >= 1, got " + std::to_string(d.n_nl));
  if (d.n_gap < 0) flag("n_gap must be >= 0, got " + std::to_string(d.n_gap));
  if (d.m_gap < 1) flag("m_gap must be >= 1, got " + std::to_string(d.m_gap));
  if (!(d.l_domain_um > 0)) {
    std::ostringstream os;
    os << "l_domain_um must be positive, got " << d.l_domain_um;
    flag(os.str());
  } else if (d.l_domain_um < 1.0 || d.l_domain_um > 50.0) {
    std::ostringstream os;
    os << "l_domain_um = " << d.l_domain_um << " outside the [1, 50] um sanity window";
    flag(os.str());
  }
  if (!(d.crystal_length_budget_um > 0)) {
    std::ostringstream os;
    os << "crystal_length_budget_um must be positive, got " << d.crystal_length_budget_um;
    flag(os.str());
  }
  if (d.n_nl >= 1 && d.n_gap >= 0 && d.m_gap >= 1 && d.l_domain_um > 0 &&
      d.crystal_length_budget_um > 0 && design_length_um(d) > d.crystal_length_budget_um) {
    std::ostringstream os;
    os << "design length " << design_length_um(d) << " um exceeds the crystal budget "
       << d.crystal_length_budget_um << " um";
    flag(os.str());
  }
  return r;
}

void require_structural(const DesignSpec& d) {
  if (d.n_nl >= 1 && d.n_gap >= 0 && d.m_gap >= 1 && d.l_domain_um > 0) return;
  std::ostringstream os;
  os << "invalid design: n_nl=" << d.n_nl << " n_gap=" << d.n_gap
     << " m_gap=" << d.m_gap << " l_domain_um=" << d.l_domain_um;
  throw InvalidInput(os.str());
}

DomainSequence build_sequence(const DesignSpec& d) {
  require_structural(d);
  const Index n = element_count(d);
  DomainSequence seq;
  seq.length_um.resize(n);
  seq.sign.resize(n);
  seq.z_front_um.resize(n);

  const double gap_len = gap_length_um(d);
  double z = 0.0;
  double stack_start = 1.0;
  Index e = 0;
  for (int s = 0; s <= d.n_gap; ++s) {
    double sgn = stack_start;
    for (int j = 0; j < d.n_nl; ++j, ++e) {
      seq.length_um[e] = d.l_domain_um;
      seq.sign[e] = sgn;
      seq.z_front_um[e] = z;
      z += d.l_domain_um;
      sgn = -sgn;
    }
    const double last = -sgn;
    if (s < d.n_gap) {
      const double gap_sign = -last;
      seq.length_um[e] = gap_len;
      seq.sign[e] = gap_sign;
      seq.z_front_um[e] = z;
      z += gap_len;
      ++e;
      stack_start = -gap_sign;
    }
  }
  seq.total_length_um = design_length_um(d);
  return seq;
}

}  // namespace spdcomb
