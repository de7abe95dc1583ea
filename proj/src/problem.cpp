#include "tropical/problem.hpp"

#include <algorithm>

namespace tropical {

namespace {

constexpr std::array<KindInfo, 17> kInfo = {{
    {"cheb_box", "", "pqgh", false, false},
    {"cheb_image_lower", "A", "pqg", false, false},
    {"cheb_kleene_box", "B", "pqgh", false, false},
    {"cheb_kleene", "B", "pq", false, false},
    {"span_min", "AB", "pq", false, false},
    {"span_min_special", "A", "", false, false},
    {"span_min_constrained", "CD", "", false, false},
    {"span_max", "AB", "pq", false, true},
    {"span_max_norm", "AB", "", false, true},
    {"span_max_constrained", "ABC", "pq", false, true},
    {"rayleigh", "A", "", false, false},
    {"rayleigh_affine", "A", "pq", true, false},
    {"rayleigh_two_constraints", "ABC", "gh", false, false},
    {"rayleigh_lower", "AB", "g", false, false},
    {"rayleigh_box", "A", "gh", false, false},
    {"rayleigh_p_lower", "AB", "pg", false, false},
    {"new_boxed_spectral", "A", "pqgh", true, false},
}};

}  // namespace

const KindInfo& kind_info(ProblemKind kind) { return kInfo[static_cast<std::size_t>(kind)]; }

std::string_view kind_name(ProblemKind kind) { return kind_info(kind).name; }

std::optional<ProblemKind> parse_kind(std::string_view name) {
  for (ProblemKind k : kAllKinds)
    if (kind_name(k) == name) return k;
  return std::nullopt;
}

}  // namespace tropical
