// gaussfid: validate, decompose and compare zero-mean Gaussian states.
//
// Exit codes: 0 success, 1 validation or domain failure, 2 unparseable input,
// 3 state outside what the Fock-space oracle can represent.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "state_spec.hpp"

#include <gaussfid/euler.hpp>
#include <gaussfid/fidelity.hpp>
#include <gaussfid/fock.hpp>

namespace {

using namespace gaussfid;

enum ExitCode : int { ok = 0, invalid = 1, parse_failure = 2, oracle_envelope = 3 };

std::string num(double v, int digits = 17) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string tuple(const Vector &v, int digits) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out += (i ? ", " : "") + num(v(i), digits);
  }
  return out + ")";
}

void print_matrix(const std::string &name, const Matrix &m) {
  std::cout << name << ":\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::cout << "  ";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::cout << (j ? " " : "") << num(m(i, j));
    }
    std::cout << "\n";
  }
}

void print_matrix(const std::string &name, const ComplexMatrix &m) {
  std::cout << name << ":\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::cout << "  ";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const Complex z = m(i, j);
      std::cout << (j ? " " : "") << num(z.real()) << (z.imag() < 0 ? "-" : "+")
                << num(std::abs(z.imag())) << "i";
    }
    std::cout << "\n";
  }
}

CorrelationMatrix load(const std::string &path, const Tolerances &tol) {
  return cli::resolve(cli::load_state_file(path), tol);
}

int cmd_validate(const std::string &path, const Tolerances &tol) {
  const cli::StateSpec spec = cli::load_state_file(path);
  try {
    const CorrelationMatrix A = cli::resolve(spec, tol);
    const Vector d = symplectic_eigenvalues(A);
    const bool pure = is_pure(A, tol);
    std::cout << "status: valid\n"
              << "modes: " << A.modes() << "\n"
              << "symplectic_eigenvalues: " << tuple(d, 17) << "\n"
              << "purity: " << (pure ? "pure" : "mixed") << "\n"
              << "det: " << num(A.matrix().determinant()) << "\n"
              << "trace_rho_squared: " << num(purity(A)) << "\n"
              << "summary: " << (pure ? "pure" : "mixed") << ", d=" << tuple(d, 12) << "\n";
    return ok;
  } catch (const Error &e) {
    std::cout << "status: invalid\n"
              << "violation: " << e.kind() << "\n";
    std::cerr << e.what() << "\n";
    return invalid;
  }
}

int cmd_decompose(const std::string &path, const Tolerances &tol) {
  const CorrelationMatrix A = load(path, tol);
  const WilliamsonDecomposition w = williamson(A, tol);
  const EulerDecomposition e = euler_decompose(w.S, tol);
  std::cout << "modes: " << A.modes() << "\n"
            << "symplectic_eigenvalues: d=" << tuple(w.d, 17) << "\n";
  print_matrix("williamson_S", w.S);
  std::cout << "williamson_residual: " << num(linalg::max_abs(Matrix(w.reconstruct() - A.matrix()))) << "\n"
            << "symplectic_residual: " << num(symplectic_residual(w.S)) << "\n"
            << "euler_m: m=" << tuple(e.m, 17) << "\n";
  print_matrix("euler_O", e.O);
  print_matrix("euler_O_prime", e.O_prime);
  std::cout << "euler_residual: " << num(linalg::max_abs(Matrix(e.reconstruct() - w.S))) << "\n"
            << "summary: d=" << tuple(w.d, 12) << ", m=" << tuple(e.m, 12) << "\n";
  return ok;
}

Method parse_method(const std::string &name) {
  if (name == "auto") return Method::automatic;
  if (name == "general") return Method::general;
  if (name == "one-mode") return Method::one_mode;
  if (name == "thermal") return Method::thermal;
  throw cli::ParseError("unknown method " + name);
}

int cmd_fidelity(const std::string &path_a, const std::string &path_b, const std::string &method_name,
                 bool breakdown, int verify_cutoff, const Tolerances &tol) {
  const Method requested = parse_method(method_name);
  const CorrelationMatrix A1 = load(path_a, tol);
  const CorrelationMatrix A2 = load(path_b, tol);
  if (A1.modes() != A2.modes()) {
    throw DomainError("mode counts differ: " + std::to_string(A1.modes()) + " vs " +
                      std::to_string(A2.modes()));
  }
  const Method used = requested == Method::automatic ? select_method(A1, A2, tol) : requested;
  const double F = fidelity(A1, A2, used, tol);
  std::cout << "method: " << to_string(used) << "\n"
            << "fidelity: " << num(F, 12) << "\n"
            << "sqrt_fidelity: " << num(std::sqrt(F), 12) << "\n";

  if (breakdown) {
    const FidelityBreakdown b = fidelity_general(A1, A2, tol);
    print_matrix("phi1", b.phi1);
    print_matrix("U", b.U);
    print_matrix("O", b.O);
    std::cout << "imag_residue: " << num(b.imag_residue) << "\n"
              << "L: " << num(b.L) << "\n"
              << "L_direct: " << num(b.L_direct) << "\n"
              << "det_phi_O: " << num(b.det_phi_O) << "\n"
              << "F_general: " << num(b.F) << "\n";
  }

  if (verify_cutoff > 0) {
    if (A1.modes() > 2) {
      std::cerr << "the Fock oracle supports at most two modes\n";
      return oracle_envelope;
    }
    const auto rho1 = fock::gaussian_density(A1, verify_cutoff, {}, tol);
    const auto rho2 = fock::gaussian_density(A2, verify_cutoff, {}, tol);
    const double oracle = fock::uhlmann_fidelity_numeric(rho1, rho2);
    std::cout << "oracle_cutoff: " << verify_cutoff << "\n"
              << "oracle_fidelity: " << num(oracle, 12) << "\n"
              << "oracle_deficits: " << num(rho1.deficit) << " " << num(rho2.deficit) << "\n"
              << "discrepancy: " << num(std::abs(oracle - F)) << "\n";
  }
  return ok;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Uhlmann fidelity of zero-mean Gaussian states"};
  app.require_subcommand(1);

  std::string tolerance_file;
  app.add_option("--tolerances", tolerance_file, "JSON file overriding numerical tolerances");

  std::string file_a, file_b, method = "auto";
  bool breakdown = false;
  int verify = 0;

  auto *validate_cmd = app.add_subcommand("validate", "check that a file describes a valid state");
  validate_cmd->add_option("file", file_a)->required();

  auto *decompose_cmd = app.add_subcommand("decompose", "Williamson and Euler decompositions");
  decompose_cmd->add_option("file", file_a)->required();

  auto *fidelity_cmd = app.add_subcommand("fidelity", "fidelity between two states");
  fidelity_cmd->add_option("fileA", file_a)->required();
  fidelity_cmd->add_option("fileB", file_b)->required();
  fidelity_cmd->add_option("--method", method, "auto | general | one-mode | thermal")
      ->check(CLI::IsMember({"auto", "general", "one-mode", "thermal"}));
  fidelity_cmd->add_flag("--breakdown", breakdown, "print every intermediate of the general formula");
  fidelity_cmd->add_option("--verify", verify, "cross-check with the Fock oracle at this cutoff")
      ->check(CLI::Range(2, gaussfid::fock::max_cutoff));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return parse_failure;
  }

  try {
    gaussfid::Tolerances tol;
    if (!tolerance_file.empty()) {
      tol = gaussfid::cli::parse_tolerances(gaussfid::cli::read_file(tolerance_file));
    }
    if (*validate_cmd) return cmd_validate(file_a, tol);
    if (*decompose_cmd) return cmd_decompose(file_a, tol);
    return cmd_fidelity(file_a, file_b, method, breakdown, verify, tol);
  } catch (const gaussfid::cli::ParseError &e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return parse_failure;
  } catch (const gaussfid::TruncationError &e) {
    std::cerr << e.what() << "\n";
    return oracle_envelope;
  } catch (const gaussfid::Error &e) {
    std::cerr << e.what() << "\n";
    return invalid;
  }
}
