#pragma once

/**
 * @file document.hpp
 * @brief JSON problem files and versioned report formats.
 *
 * A problem file:
 *
 *   {
 *     "semifield": "max-plus",
 *     "kind": "cheb_box",
 *     "p": [4], "q": [0], "g": [1], "h": [3],
 *     "verify": {"samples": 20, "seed": 7, "step": "1/4"}
 *   }
 *
 * Matrices are arrays of rows. The semifield zero is null. Scalars of the
 * (.,+) carriers are integers or rational strings ("7/2"); the (.,x)
 * carriers take plain numbers. Only the fields the kind reads are allowed.
 */

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "tropical/oracle.hpp"
#include "tropical/problem.hpp"
#include "tropical/solvers.hpp"

namespace tropical {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kProblemSchema = "tropical-problem/1";
inline constexpr std::string_view kReportSchema = "tropical-report/1";
inline constexpr std::string_view kVerificationSchema = "tropical-verification/1";
inline constexpr std::string_view kAlgebraSchema = "tropical-algebra/1";

using AnyProblem = std::variant<Problem<MaxPlus>, Problem<MinPlus>, Problem<MaxTimes>, Problem<MinTimes>>;

/// Optional "verify" block of a problem file.
struct VerifySettings {
  std::optional<std::int64_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<Rational> step;
  std::optional<Rational> window;
  std::optional<Rational> radius;
};

struct ProblemDocument {
  AnyProblem problem;
  VerifySettings verify;
};

SemifieldTag parse_semifield(std::string_view name);
std::string_view semifield_name(SemifieldTag tag);

/// Throws Error(parse) with the offending field path.
ProblemDocument parse_document(std::string_view text);

Rational rational_from_json(const Json& j, const std::string& path);
Json rational_to_json(const Rational& r);

template <Semifield F>
Json to_json(const Scalar<F>& s) {
  if (s.is_zero()) return nullptr;
  if constexpr (F::multiplicative) {
    return s.value();
  } else {
    return rational_to_json(s.value());
  }
}

template <Semifield F>
Scalar<F> scalar_from_json(const Json& j, const std::string& path) {
  try {
    if (j.is_null()) return Scalar<F>::zero();
    if (j.is_string()) return parse_scalar<F>(j.get<std::string>());
    if (j.is_number()) {
      if constexpr (F::multiplicative) {
        return Scalar<F>(j.get<double>());
      } else {
        return Scalar<F>(rational_from_json(j, path));
      }
    }
  } catch (const Error& e) {
    throw Error(ErrorCode::parse, path + ": " + e.what());
  }
  throw Error(ErrorCode::parse, path + ": expected a number, a rational string or null");
}

template <class D>
Json to_json(const Eigen::MatrixBase<D>& a) {
  Json out = Json::array();
  if (a.cols() == 1) {
    for (Index i = 0; i < a.rows(); ++i) out.push_back(to_json(a(i, 0)));
    return out;
  }
  for (Index i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < a.cols(); ++j) row.push_back(to_json(a(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

/// A matrix is always written as an array of rows, even with one column.
template <Semifield F>
Json matrix_to_json(const Matrix<F>& a) {
  Json out = Json::array();
  for (Index i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < a.cols(); ++j) row.push_back(to_json(a(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

template <Semifield F>
Matrix<F> matrix_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::parse, path + ": expected a nonempty array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string rp = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].empty()) throw Error(ErrorCode::parse, rp + ": expected a nonempty row");
    if (i == 0) cols = j[i].size();
    if (j[i].size() != cols) {
      throw Error(ErrorCode::parse, rp + ": row has " + std::to_string(j[i].size()) +
                                        " entries, expected " + std::to_string(cols));
    }
  }
  Matrix<F> out(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k)
      out(static_cast<Index>(i), static_cast<Index>(k)) =
          scalar_from_json<F>(j[i][k], path + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
  return out;
}

template <Semifield F>
Vector<F> vector_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::parse, path + ": expected a nonempty array");
  Vector<F> out(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    out(static_cast<Index>(i)) = scalar_from_json<F>(j[i], path + "[" + std::to_string(i) + "]");
  return out;
}

template <Semifield F>
Json problem_to_json(const Problem<F>& pr) {
  Json out;
  out["schema"] = kProblemSchema;
  out["semifield"] = F::name;
  out["kind"] = kind_name(pr.kind);
  for (char m : kind_info(pr.kind).matrices) out[std::string(1, m)] = matrix_to_json(pr.matrix(m));
  for (char v : kind_info(pr.kind).vectors) out[std::string(1, v)] = to_json(pr.vector(v));
  if (kind_info(pr.kind).needs_r) out["r"] = to_json(pr.scalar_r());
  return out;
}

template <Semifield F>
Json solution_to_json(const SolutionSet<F>& s) {
  Json out;
  if (const auto* box = std::get_if<BoxSolutionSet<F>>(&s)) {
    out["type"] = "box";
    out["lower"] = box->lower ? to_json(*box->lower) : Json(nullptr);
    out["upper"] = box->upper ? to_json(*box->upper) : Json(nullptr);
  } else if (const auto* gen = std::get_if<GeneratedSolutionSet<F>>(&s)) {
    out["type"] = "generated";
    out["generator"] = matrix_to_json<F>(gen->generator);
    out["lower"] = to_json(gen->lower);
    out["upper"] = gen->upper ? to_json(*gen->upper) : Json(nullptr);
  } else if (const auto* ray = std::get_if<RaySolution<F>>(&s)) {
    out["type"] = "ray";
    out["direction"] = to_json(ray->direction);
  } else if (const auto* fam = std::get_if<ComponentwiseFamily<F>>(&s)) {
    out["type"] = "componentwise";
    Json branches = Json::array();
    for (const auto& b : fam->branches) {
      Json jb;
      jb["pinned"] = b.pinned;
      jb["bound_row"] = b.bound_row;
      jb["point"] = to_json(b.point);
      branches.push_back(std::move(jb));
    }
    out["branches"] = std::move(branches);
    out["map"] = fam->map ? matrix_to_json<F>(*fam->map) : Json(nullptr);
  } else {
    return nullptr;
  }
  return out;
}

template <Semifield F>
Json report_to_json(const Problem<F>& pr, const OptimumReport<F>& rep) {
  Json out;
  out["schema"] = kReportSchema;
  out["instance"] = oracle::instance_id(pr);
  out["semifield"] = F::name;
  out["kind"] = kind_name(rep.kind);
  out["status"] = rep.solved() ? "solved" : "infeasible";
  out["optimum"] = rep.solved() ? to_json(rep.optimum) : Json(nullptr);
  out["reason"] = rep.reason.empty() ? Json(nullptr) : Json(rep.reason);
  out["complete"] = rep.complete;
  out["solution"] = solution_to_json(rep.solution);
  Json diag = Json::array();
  for (const auto& d : rep.diagnostics) diag.push_back({{"check", d.check}, {"passed", d.passed}});
  out["diagnostics"] = std::move(diag);
  return out;
}

template <Semifield F>
Json verification_to_json(const oracle::VerificationReport<F>& vr) {
  auto opt_scalar = [](const std::optional<Scalar<F>>& s) { return s ? to_json(*s) : Json(nullptr); };
  Json out;
  out["schema"] = kVerificationSchema;
  out["instance"] = vr.instance_id;
  out["semifield"] = F::name;
  out["kind"] = kind_name(vr.kind);
  out["status"] = vr.status == Status::solved ? "solved" : "infeasible";
  out["reason"] = vr.reason.empty() ? Json(nullptr) : Json(vr.reason);
  out["solver_optimum"] = opt_scalar(vr.solver_optimum);
  out["grid_optimum"] = opt_scalar(vr.grid_optimum);
  out["grid_argbest"] = vr.grid_argbest ? to_json(*vr.grid_argbest) : Json(nullptr);
  out["gap"] = vr.gap ? Json(*vr.gap) : Json(nullptr);
  out["grid"] = {{"step", rational_to_json(vr.step)},
                 {"radius", rational_to_json(vr.radius)},
                 {"points", vr.grid_points}};
  out["samples"] = {{"checked", vr.samples_checked},
                    {"seed", vr.seed},
                    {"window", rational_to_json(vr.window)}};
  out["feasibility_failures"] = vr.feasibility_failures;
  Json checks = Json::array();
  for (const auto& c : vr.checks) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  out["checks"] = std::move(checks);
  out["verified"] = vr.verified();
  return out;
}

}  // namespace tropical
