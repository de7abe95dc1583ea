#include "tropical/commands.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "tropical/document.hpp"
#include "tropical/generator.hpp"
#include "tropical/oracle.hpp"
#include "tropical/solvers.hpp"

namespace tropical {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::parse, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int report_error(const std::exception& e, std::ostream& err) {
  err << "error: " << e.what() << "\n";
  if (const auto* te = dynamic_cast<const Error*>(&e); te && te->code() == ErrorCode::resource_cap) {
    return kExitResourceCap;
  }
  return kExitInputError;
}

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return report_error(e, err);
  }
}

template <class D>
std::string row_text(const Eigen::MatrixBase<D>& v) {
  std::string out;
  for (Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ' ';
    out += to_string(v(i));
  }
  return out;
}

template <class D>
void print_matrix(std::ostream& out, const Eigen::MatrixBase<D>& a, std::string_view indent) {
  std::istringstream lines(format_matrix(a));
  for (std::string line; std::getline(lines, line);) out << indent << line << "\n";
}

template <Semifield F>
void print_solution(std::ostream& out, const SolutionSet<F>& s) {
  if (const auto* box = std::get_if<BoxSolutionSet<F>>(&s)) {
    out << "solution  box, lower <= x <= upper\n";
    out << "  lower   " << (box->lower ? row_text(*box->lower) : "none") << "\n";
    out << "  upper   " << (box->upper ? row_text(*box->upper) : "none") << "\n";
  } else if (const auto* gen = std::get_if<GeneratedSolutionSet<F>>(&s)) {
    out << "solution  x = G u, lower <= u <= upper\n";
    out << "  G\n";
    print_matrix(out, gen->generator, "    ");
    out << "  lower   " << row_text(gen->lower) << "\n";
    out << "  upper   " << (gen->upper ? row_text(*gen->upper) : "none") << "\n";
  } else if (const auto* ray = std::get_if<RaySolution<F>>(&s)) {
    out << "solution  x = alpha d, alpha nonzero\n";
    out << "  d       " << row_text(ray->direction) << "\n";
  } else if (const auto* fam = std::get_if<ComponentwiseFamily<F>>(&s)) {
    out << "solution  " << (fam->map ? "x = M u, " : "") << "u_k = alpha w_k, u_j <= alpha w_j\n";
    for (const auto& b : fam->branches) {
      out << "  k=" << b.pinned + 1 << " s=" << b.bound_row + 1 << "  w = " << row_text(b.point) << "\n";
    }
    if (fam->map) {
      out << "  M\n";
      print_matrix(out, *fam->map, "    ");
    }
  }
}

template <Semifield F>
int solve_one(const Problem<F>& pr, const CommandOptions& opt, std::ostream& out) {
  const OptimumReport<F> rep = solve(pr);
  if (opt.json) {
    out << report_to_json(pr, rep).dump(2) << "\n";
  } else {
    out << "instance  " << oracle::instance_id(pr) << "\n";
    out << "kind      " << kind_name(rep.kind) << " (" << F::name << ")\n";
    if (rep.solved()) {
      out << "status    solved" << (rep.complete ? "" : " (partial solution set)") << "\n";
      out << "optimum   " << to_string(rep.optimum) << "\n";
      print_solution(out, rep.solution);
    } else {
      out << "status    infeasible (" << rep.reason << ")\n";
    }
    out << "checks\n";
    for (const auto& d : rep.diagnostics) out << "  " << (d.passed ? "ok    " : "FAIL  ") << d.check << "\n";
  }
  return rep.solved() ? kExitOk : kExitInfeasible;
}

template <Semifield F>
int verify_one(const Problem<F>& pr, const VerifySettings& doc, const CommandOptions& opt,
               std::ostream& out) {
  const OptimumReport<F> rep = solve(pr);
  oracle::VerifyOptions vo;
  vo.samples = opt.samples.value_or(doc.samples.value_or(vo.samples));
  vo.seed = opt.seed.value_or(doc.seed.value_or(vo.seed));
  vo.step = opt.step ? opt.step : doc.step;
  vo.window = opt.window.value_or(doc.window.value_or(vo.window));
  vo.radius = opt.radius.value_or(doc.radius.value_or(vo.radius));
  vo.cap = opt.grid_cap.value_or(vo.cap);
  const auto vr = oracle::verify_report(pr, rep, vo);

  if (opt.json) {
    out << verification_to_json(vr).dump(2) << "\n";
  } else {
    auto opt_text = [](const auto& s) { return s ? to_string(*s) : std::string("none"); };
    out << "instance        " << vr.instance_id << "\n";
    out << "kind            " << kind_name(vr.kind) << " (" << F::name << ")\n";
    out << "status          " << (vr.status == Status::solved ? "solved" : "infeasible ("+ vr.reason + ")")
        << "\n";
    out << "solver optimum  " << opt_text(vr.solver_optimum) << "\n";
    out << "grid optimum    " << opt_text(vr.grid_optimum) << "\n";
    out << "gap             " << vr.gap.value_or("none") << "\n";
    out << "grid            " << vr.grid_points << " points, step " << format_rational(vr.step)
        << ", radius " << format_rational(vr.radius) << "\n";
    out << "samples         " << vr.samples_checked << " checked, seed " << vr.seed << ", window "
        << format_rational(vr.window) << "\n";
    for (const auto& f : vr.feasibility_failures) out << "  failure       " << f << "\n";
    out << "checks\n";
    for (const auto& c : vr.checks) {
      out << "  " << (c.passed ? "pass  " : "FAIL  ") << c.name << (c.detail.empty() ? "" : ": " + c.detail)
          << "\n";
    }
    out << "verified        " << (vr.verified() ? "yes" : "no") << "\n";
  }
  if (!vr.verified()) return kExitVerificationFailed;
  return rep.solved() ? kExitOk : kExitInfeasible;
}

template <Semifield F>
Matrix<F> read_matrix(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw Error(ErrorCode::parse, std::string("malformed JSON: ") + e.what());
    }
    return matrix_from_json<F>(j, "matrix");
  }
  return parse_matrix<F>(text);
}

template <Semifield F>
int algebra_one(std::string_view sub, const std::string& text, const CommandOptions& opt,
                std::ostream& out) {
  const Matrix<F> a = read_matrix<F>(text);
  if (a.size() == 0 || a.rows() != a.cols()) {
    throw Error(ErrorCode::shape_mismatch, "matrix must be square and nonempty, got " +
                                               std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  Json j;
  j["schema"] = kAlgebraSchema;
  j["semifield"] = F::name;
  j["operation"] = sub;
  if (sub == "star") {
    const auto star = kleene_star(a);
    j["result"] = matrix_to_json<F>(star.matrix);
    j["closure_valid"] = star.closure_valid;
    if (!opt.json) {
      out << "A* =\n";
      print_matrix(out, star.matrix, "  ");
      out << "closure valid (Tr(A) <= 1): " << (star.closure_valid ? "yes" : "no") << "\n";
    }
  } else if (sub == "spectral") {
    const Scalar<F> lambda = spectral_radius(a);
    j["result"] = to_json(lambda);
    if (!opt.json) out << "lambda = " << to_string(lambda) << "\n";
  } else if (sub == "tr") {
    const Scalar<F> tr = tr_functional(a);
    const bool gate = tr <= Scalar<F>::one();
    j["result"] = to_json(tr);
    j["at_most_one"] = gate;
    if (!opt.json) out << "Tr(A) = " << to_string(tr) << "\nTr(A) <= 1: " << (gate ? "yes" : "no") << "\n";
  } else {
    throw Error(ErrorCode::parse, "unknown algebra operation '" + std::string(sub) +
                                      "' (expected star, spectral or tr)");
  }
  if (opt.json) out << j.dump(2) << "\n";
  return kExitOk;
}

/// Calls fn.template operator()<F>() for the named semifield.
template <class Fn>
int with_semifield(std::string_view name, Fn&& fn) {
  switch (parse_semifield(name)) {
    case SemifieldTag::max_plus: return fn(MaxPlus{});
    case SemifieldTag::min_plus: return fn(MinPlus{});
    case SemifieldTag::max_times: return fn(MaxTimes{});
    case SemifieldTag::min_times: return fn(MinTimes{});
  }
  return kExitInputError;
}

}  // namespace

int cmd_solve(const std::string& path, const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ProblemDocument doc = parse_document(read_file(path));
    return std::visit([&](const auto& pr) { return solve_one(pr, opt, out); }, doc.problem);
  });
}

int cmd_verify(const std::string& path, const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ProblemDocument doc = parse_document(read_file(path));
    return std::visit([&](const auto& pr) { return verify_one(pr, doc.verify, opt, out); }, doc.problem);
  });
}

int cmd_gen(std::string_view kind, const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto k = parse_kind(kind);
    if (!k) throw Error(ErrorCode::parse, "unknown problem kind '" + std::string(kind) + "'");
    if (opt.n < 1 || opt.n > 8) throw Error(ErrorCode::domain, "n must lie in 1..8");
    return with_semifield(opt.semifield, [&](auto field) {
      using F = decltype(field);
      const auto pr = generate_problem<F>(*k, opt.n, opt.seed.value_or(1));
      out << problem_to_json(pr).dump(2) << "\n";
      return kExitOk;
    });
  });
}

int cmd_algebra(std::string_view subcommand, const std::string& path, const CommandOptions& opt,
                std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::string text = read_file(path);
    return with_semifield(opt.semifield, [&](auto field) {
      using F = decltype(field);
      return algebra_one<F>(subcommand, text, opt, out);
    });
  });
}

}  // namespace tropical
