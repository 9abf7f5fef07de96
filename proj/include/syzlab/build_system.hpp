#ifndef SYZLAB_BUILD_SYSTEM_HPP
#define SYZLAB_BUILD_SYSTEM_HPP

#include "syzlab/curve.hpp"
#include "syzlab/section_system.hpp"

namespace syzlab {

// Packages the bases of H0(B+qL) over [q_min, q_max] together with the
// multiplication tensors mu_q : H0(L) x H0(B+qL) -> H0(B+(q+1)L).
// Warns (in SectionSystem::warnings) when deg L < 2g+1, i.e. below the
// degree at which very-ampleness is guaranteed.
SectionSystem build_section_system(const CurveModel& c, const LineBundleSpec& B,
                                   const LineBundleSpec& L, int q_min, int q_max);

}  // namespace syzlab

#endif
