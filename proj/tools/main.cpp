// Command-line front end: fiducial search and verification, state and
// probability conversions, residual reports, and foil tables. All
// randomized commands are reproducible from --seed; exit codes are
// 0 success, 1 verification failure, 2 usage/input error.

#include "qplex/cone_foils.hpp"
#include "qplex/io.hpp"
#include "qplex/mic.hpp"
#include "qplex/qplex.hpp"
#include "qplex/report.hpp"
#include "qplex/sic.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace qplex;
namespace fs = std::filesystem;

void emit(const Json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << dump_json(j);
  else
    write_json_file(out_path, j);
}

fs::path cache_dir() {
  if (const char* env = std::getenv("QPLEX_CACHE_DIR")) return fs::path(env);
  if (const char* home = std::getenv("HOME")) return fs::path(home) / ".cache" / "qplex";
  return fs::path(".qplex-cache");
}

FiducialSearchResult cached_search(int d, int restarts, std::uint64_t seed, double tol,
                                   int workers) {
  fs::path dir = cache_dir();
  std::ostringstream name;
  name << "fiducial_d" << d << "_seed" << seed << "_restarts" << restarts << ".json";
  fs::path path = dir / name.str();
  if (fs::exists(path)) {
    Json j = read_json_file(path.string());
    FiducialSearchResult res;
    res.fiducial = fiducial_from_json(j);
    res.potential = j.at("potential").get<double>();
    res.converged = res.potential <= tol;
    if (res.fiducial.dim() == d) return res;
  }
  FiducialSearchResult res = search_fiducial(d, restarts, seed, tol, workers);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!ec) write_json_file(path.string(), fiducial_to_json(res.fiducial, res.potential, seed));
  return res;
}

Sic load_sic(const std::string& fiducial_path) {
  return sic_from_fiducial(fiducial_from_json(read_json_file(fiducial_path)));
}

int cmd_search_sic(int d, int restarts, std::uint64_t seed, double tol, int workers,
                   const std::string& out) {
  auto res = cached_search(d, restarts, seed, tol, workers);
  emit(fiducial_to_json(res.fiducial, res.potential, seed), out);
  if (!res.converged) {
    std::cerr << "search-sic: best potential " << res.potential << " exceeds tolerance " << tol
              << "\n";
    return 1;
  }
  return 0;
}

int cmd_verify_sic(const std::string& fiducial_path, double tol, const std::string& out) {
  Sic sic = load_sic(fiducial_path);
  SicReport rep = sic_verify(sic.vectors, tol);
  emit(Json{{"d", sic.dim},
            {"max_overlap_dev", rep.max_overlap_dev},
            {"max_norm_dev", rep.max_norm_dev},
            {"completeness_dev", rep.completeness_dev},
            {"pass", rep.pass}},
       out);
  return rep.pass ? 0 : 1;
}

int cmd_probs(const std::string& fiducial_path, const std::string& state_path,
              const std::string& out) {
  Sic sic = load_sic(fiducial_path);
  DensityOperator rho{matrix_from_json(read_json_file(state_path))};
  auto check = is_density(rho.matrix, 1e-9);
  if (!check.pass) {
    std::cerr << "probs: input is not a density operator\n";
    return 2;
  }
  emit(Json{{"d", sic.dim}, {"probs", real_vector_to_json(state_to_probs(rho, sic))}}, out);
  return 0;
}

int cmd_reconstruct(const std::string& fiducial_path, const std::string& probs_path,
                    const std::string& out) {
  Sic sic = load_sic(fiducial_path);
  ProbVector p = real_vector_from_json(read_json_file(probs_path));
  check_prob_vector(p, 1e-9);
  auto res = probs_to_state(p, sic);
  emit(Json{{"d", sic.dim},
            {"rho", matrix_to_json(res.rho)},
            {"psd", res.psd},
            {"min_eigenvalue", res.min_eigenvalue}},
       out);
  return res.psd ? 0 : 1;
}

int cmd_urgleichung(int d, int q, const std::string& cond_path, const std::string& probs_path,
                    const std::string& out) {
  auto params = make_params(d, q);
  CondMatrix r = make_cond_matrix(real_matrix_from_json(read_json_file(cond_path)), 1e-9);
  ProbVector p = real_vector_from_json(read_json_file(probs_path));
  check_prob_vector(p, 1e-9);
  auto res = urgleichung(r, p, params);
  emit(Json{{"params", params_to_json(params)},
            {"q", real_vector_to_json(res.q)},
            {"has_negative", res.has_negative}},
       out);
  return 0;
}

int cmd_qbic(const std::string& fiducial_path, int samples, std::uint64_t seed, double tol,
             const std::string& out) {
  Sic sic = load_sic(fiducial_path);
  TripleProducts trip = triple_products(sic);
  Rng rng(seed);
  double max_quad = 0.0, max_cubic = 0.0;
  for (int t = 0; t < samples; ++t) {
    ProbVector p = state_to_probs(pure_density(random_pure_state(sic.dim, rng)), sic);
    auto res = qbic_residuals(p, trip, sic.dim);
    max_quad = std::max(max_quad, res.quadratic);
    max_cubic = std::max(max_cubic, res.cubic);
  }
  bool pass = max_quad < tol && max_cubic < tol;
  emit(Json{{"d", sic.dim},
            {"samples", samples},
            {"max_quadratic_residual", max_quad},
            {"max_cubic_residual", max_cubic},
            {"cubic_rhs", (sic.dim + 7.0) / std::pow(sic.dim + 1.0, 3)},
            {"pass", pass}},
       out);
  return pass ? 0 : 1;
}

int cmd_mmd(const std::string& fiducial_path, std::uint64_t seed, double tol,
            const std::string& out) {
  Sic sic = load_sic(fiducial_path);
  auto params = make_params(sic.dim, 2);
  Rng rng(seed);
  auto basis = random_orthonormal_basis(sic.dim, rng);
  std::vector<ProbVector> images;
  for (const auto& v : basis) images.push_back(state_to_probs(pure_density(v), sic));
  MmdReport rep = mmd_verify(images, params, tol);
  emit(Json{{"d", sic.dim},
            {"m", static_cast<int>(images.size())},
            {"bound", mmd_bound(params)},
            {"max_diag_dev", rep.max_diag_dev},
            {"max_offdiag_dev", rep.max_offdiag_dev},
            {"sum_dev", rep.sum_dev},
            {"saturated", rep.saturated},
            {"pass", rep.pass}},
       out);
  return rep.pass ? 0 : 1;
}

int cmd_mic_report(int d, std::uint64_t seed, const std::string& fiducial_path,
                   const std::string& out) {
  Mic mic = fiducial_path.empty() ? random_rank1_mic(d, seed) : mic_from_sic(load_sic(fiducial_path));
  MicReport rep = mic_verify(mic.elements, 1e-9);
  emit(Json{{"d", mic.dim},
            {"psd_dev", rep.psd_dev},
            {"completeness_dev", rep.completeness_dev},
            {"min_gram_eigenvalue", rep.min_gram_eigenvalue},
            {"self_duality_gap", self_duality_gap(mic)},
            {"pass", rep.pass}},
       out);
  return rep.pass ? 0 : 1;
}

int cmd_cone(int d, int q, int samples, std::uint64_t seed, const std::string& out) {
  auto params = make_params(d, q);
  ConeTheory cone = build_cone(params);
  Rng rng(seed);
  double max_resid = 0.0;
  for (int t = 0; t < samples; ++t) {
    RealVector lambda(params.N);
    for (int i = 0; i < params.N; ++i) lambda(i) = std::abs(rng.gaussian());
    lambda /= lambda.sum();
    RealVector v = cone.basis * lambda;
    max_resid = std::max(max_resid,
                         (f_inverse(cone, f_map(cone, v)) - v).cwiseAbs().maxCoeff());
  }
  double resolution_dev =
      (cone.dual_basis.rowwise().sum() - cone.order_unit).cwiseAbs().maxCoeff();
  bool pass = max_resid < 1e-12 && resolution_dev < 1e-12;
  emit(Json{{"params", params_to_json(params)},
            {"samples", samples},
            {"max_round_trip_residual", max_resid},
            {"order_unit_resolution_dev", resolution_dev},
            {"order_unit_norm_sq", cone.order_unit.dot(cone.order_unit)},
            {"pass", pass}},
       out);
  return pass ? 0 : 1;
}

int cmd_foils(int dmax, const std::string& out) {
  std::ostringstream csv;
  csv << "d,real,complex,quaternionic\n";
  for (int d = 1; d <= dmax; ++d)
    csv << d << ',' << jordan_param_count(JordanFamily::Real, d) << ','
        << jordan_param_count(JordanFamily::Complex, d) << ','
        << jordan_param_count(JordanFamily::Quaternionic, d) << '\n';
  if (out.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream file(out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open for writing: " + out);
    file << csv.str();
  }
  return 0;
}

int cmd_report(int d, std::uint64_t seed, int restarts, double tol, int workers,
               const std::string& out) {
  auto res = cached_search(d, restarts, seed, tol, workers);
  if (!res.converged) {
    std::cerr << "report: fiducial search did not converge (potential " << res.potential
              << ")\n";
    return 1;
  }
  emit(report_all(d, seed, res.fiducial, res.potential), out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SIC/qplex numerical toolkit"};
  app.require_subcommand(1);

  int d = 2, q = 2, restarts = 10, workers = 0, samples = 100, dmax = 8;
  std::uint64_t seed = 0;
  double tol = 1e-12;
  std::string out, fiducial_path, state_path, probs_path, cond_path;

  auto* search = app.add_subcommand("search-sic", "Search for a SIC fiducial vector");
  search->add_option("--d", d, "Hilbert-space dimension")->required();
  search->add_option("--restarts", restarts, "Random restarts");
  search->add_option("--seed", seed, "RNG seed");
  search->add_option("--tol", tol, "Frame-potential tolerance");
  search->add_option("--workers", workers, "Worker threads (0 = hardware)");
  search->add_option("--out", out, "Output fiducial JSON path");

  auto* verify = app.add_subcommand("verify-sic", "Verify a fiducial's orbit");
  verify->add_option("fiducial", fiducial_path, "Fiducial JSON file")->required();
  double verify_tol = 1e-8;
  verify->add_option("--tol", verify_tol, "Verification tolerance");
  verify->add_option("--out", out, "Output report path");

  auto* probs = app.add_subcommand("probs", "Density operator to SIC probabilities");
  probs->add_option("--fiducial", fiducial_path, "Fiducial JSON file")->required();
  probs->add_option("--state", state_path, "Density-matrix JSON file")->required();
  probs->add_option("--out", out, "Output path");

  auto* rec = app.add_subcommand("reconstruct", "SIC probabilities to density operator");
  rec->add_option("--fiducial", fiducial_path, "Fiducial JSON file")->required();
  rec->add_option("--probs", probs_path, "Probability-vector JSON file")->required();
  rec->add_option("--out", out, "Output path");

  auto* urg = app.add_subcommand("urgleichung", "Apply the urgleichung");
  urg->add_option("--d", d, "Dimension")->required();
  urg->add_option("--q", q, "Polygonal index");
  urg->add_option("--cond", cond_path, "Conditional-matrix JSON file")->required();
  urg->add_option("--probs", probs_path, "Probability-vector JSON file")->required();
  urg->add_option("--out", out, "Output path");

  auto* qbic = app.add_subcommand("qbic", "QBic residuals over random pure states");
  qbic->add_option("--fiducial", fiducial_path, "Fiducial JSON file")->required();
  qbic->add_option("--samples", samples, "Number of samples");
  qbic->add_option("--seed", seed, "RNG seed");
  double qbic_tol = 1e-8;
  qbic->add_option("--tol", qbic_tol, "Residual tolerance");
  qbic->add_option("--out", out, "Output path");

  auto* mmd = app.add_subcommand("mmd", "MMD check for a random basis image");
  mmd->add_option("--fiducial", fiducial_path, "Fiducial JSON file")->required();
  mmd->add_option("--seed", seed, "RNG seed");
  double mmd_tol = 1e-9;
  mmd->add_option("--tol", mmd_tol, "Verification tolerance");
  mmd->add_option("--out", out, "Output path");

  auto* micr = app.add_subcommand("mic-report", "MIC verification and self-duality gap");
  micr->add_option("--d", d, "Dimension")->required();
  micr->add_option("--seed", seed, "RNG seed");
  micr->add_option("--fiducial", fiducial_path, "Use the SIC MIC from this fiducial");
  micr->add_option("--out", out, "Output path");

  auto* cone = app.add_subcommand("cone", "Cone bijection round-trip check");
  cone->add_option("--d", d, "Dimension")->required();
  cone->add_option("--q", q, "Polygonal index");
  cone->add_option("--samples", samples, "Number of samples");
  cone->add_option("--seed", seed, "RNG seed");
  cone->add_option("--out", out, "Output path");

  auto* foils = app.add_subcommand("foils", "Jordan parameter-count table (CSV)");
  foils->add_option("--dmax", dmax, "Largest dimension");
  foils->add_option("--out", out, "Output CSV path");

  auto* rep = app.add_subcommand("report", "Aggregate verification report");
  rep->add_option("--d", d, "Dimension")->required();
  rep->add_option("--seed", seed, "RNG seed");
  rep->add_option("--restarts", restarts, "Fiducial-search restarts");
  rep->add_option("--tol", tol, "Frame-potential tolerance");
  rep->add_option("--workers", workers, "Worker threads (0 = hardware)");
  rep->add_option("--out", out, "Output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*search) return cmd_search_sic(d, restarts, seed, tol, workers, out);
    if (*verify) return cmd_verify_sic(fiducial_path, verify_tol, out);
    if (*probs) return cmd_probs(fiducial_path, state_path, out);
    if (*rec) return cmd_reconstruct(fiducial_path, probs_path, out);
    if (*urg) return cmd_urgleichung(d, q, cond_path, probs_path, out);
    if (*qbic) return cmd_qbic(fiducial_path, samples, seed, qbic_tol, out);
    if (*mmd) return cmd_mmd(fiducial_path, seed, mmd_tol, out);
    if (*micr) return cmd_mic_report(d, seed, fiducial_path, out);
    if (*cone) return cmd_cone(d, q, samples, seed, out);
    if (*foils) return cmd_foils(dmax, out);
    if (*rep) return cmd_report(d, seed, restarts, tol, workers, out);
  } catch (const std::exception& e) {
    std::cerr << argv[0] << ": " << e.what() << "\n";
    return 2;
  }
  return 2;
}
