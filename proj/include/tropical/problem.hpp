#pragma once

/**
 * @file problem.hpp
 * @brief Problem kinds and instance data shared by the solvers, the oracle
 *        and the command line front end.
 *
 * Objectives, all over regular x (minimized unless noted):
 *
 *   cheb_box                 q^- x (+) x^- p               g <= x <= h
 *   cheb_image_lower         q^- A x (+) (A x)^- p         x >= g
 *   cheb_kleene_box          x^- p (+) q^- x               B x (+) g <= x, x <= h
 *   cheb_kleene              x^- p (+) q^- x               B x <= x
 *   span_min                 q^- B x (A x)^- p
 *   span_min_special         1^T A x (A x)^- 1
 *   span_min_constrained     1^T y y^- 1, y = C x          D x <= x
 *   span_max        (max)    q^- B x (A x)^- p
 *   span_max_norm   (max)    ||B x|| ||(A x)^-||
 *   span_max_constrained (max) q^- B x (A x)^- p           C x <= x
 *   rayleigh                 x^- A x
 *   rayleigh_affine          x^- A x (+) x^- p (+) q^- x (+) r
 *   rayleigh_two_constraints x^- A x                       B x (+) g <= x, C x <= h
 *   rayleigh_lower           x^- A x                       B x (+) g <= x
 *   rayleigh_box             x^- A x                       g <= x <= h
 *   rayleigh_p_lower         x^- A x (+) x^- p             B x (+) g <= x
 *   new_boxed_spectral       x^- A x (+) x^- p (+) q^- x (+) r   g <= x <= h
 */

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "tropical/linalg.hpp"

namespace tropical {

enum class ProblemKind {
  cheb_box,
  cheb_image_lower,
  cheb_kleene_box,
  cheb_kleene,
  span_min,
  span_min_special,
  span_min_constrained,
  span_max,
  span_max_norm,
  span_max_constrained,
  rayleigh,
  rayleigh_affine,
  rayleigh_two_constraints,
  rayleigh_lower,
  rayleigh_box,
  rayleigh_p_lower,
  new_boxed_spectral,
};

inline constexpr std::array<ProblemKind, 17> kAllKinds = {
    ProblemKind::cheb_box,         ProblemKind::cheb_image_lower,
    ProblemKind::cheb_kleene_box,  ProblemKind::cheb_kleene,
    ProblemKind::span_min,         ProblemKind::span_min_special,
    ProblemKind::span_min_constrained, ProblemKind::span_max,
    ProblemKind::span_max_norm,    ProblemKind::span_max_constrained,
    ProblemKind::rayleigh,         ProblemKind::rayleigh_affine,
    ProblemKind::rayleigh_two_constraints, ProblemKind::rayleigh_lower,
    ProblemKind::rayleigh_box,     ProblemKind::rayleigh_p_lower,
    ProblemKind::new_boxed_spectral,
};

/// Which named fields a kind reads. Matrices are A, B, C, D; vectors p, q, g, h.
struct KindInfo {
  std::string_view name;
  std::string_view matrices;
  std::string_view vectors;
  bool needs_r = false;
  bool maximize = false;
};

const KindInfo& kind_info(ProblemKind kind);
std::string_view kind_name(ProblemKind kind);
std::optional<ProblemKind> parse_kind(std::string_view name);

template <Semifield F>
struct Problem {
  ProblemKind kind = ProblemKind::cheb_box;
  std::optional<Matrix<F>> A, B, C, D;
  std::optional<Vector<F>> p, q, g, h;
  std::optional<Scalar<F>> r;

  const Matrix<F>& matrix(char name) const {
    const std::optional<Matrix<F>>* m = name == 'A' ? &A : name == 'B' ? &B : name == 'C' ? &C : &D;
    if (!m->has_value()) {
      throw Error(ErrorCode::parse, std::string(kind_name(kind)) + ": missing matrix " + name);
    }
    return **m;
  }

  const Vector<F>& vector(char name) const {
    const std::optional<Vector<F>>* v = name == 'p' ? &p : name == 'q' ? &q : name == 'g' ? &g : &h;
    if (!v->has_value()) {
      throw Error(ErrorCode::parse, std::string(kind_name(kind)) + ": missing vector " + name);
    }
    return **v;
  }

  const Scalar<F>& scalar_r() const {
    if (!r) throw Error(ErrorCode::parse, std::string(kind_name(kind)) + ": missing scalar r");
    return *r;
  }

  /// Dimension n of the unknown x.
  Index unknowns() const {
    switch (kind) {
      case ProblemKind::cheb_box: return vector('p').size();
      case ProblemKind::span_min_constrained: return matrix('C').cols();
      case ProblemKind::cheb_kleene_box:
      case ProblemKind::cheb_kleene: return matrix('B').cols();
      default: return matrix('A').cols();
    }
  }
};

}  // namespace tropical
