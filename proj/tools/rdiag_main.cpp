// Command-line entry point.  Eight subcommands expose the measure layer,
// the transform calculus, the radial spectral-measure pipeline, closed-form
// evaluations, random-matrix simulation, grid recovery from matrices, and
// the acceptance suite.  All numeric output goes through format_double
// (17 significant digits) so identical flags produce byte-identical files.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rdiag/acceptance.hpp"
#include "rdiag/closed_forms.hpp"
#include "rdiag/errors.hpp"
#include "rdiag/matrix_lab.hpp"
#include "rdiag/measure.hpp"
#include "rdiag/measure_io.hpp"
#include "rdiag/rng.hpp"
#include "rdiag/subordination.hpp"
#include "rdiag/transforms.hpp"

namespace {

using rdiag::format_double;

// Either stdout or a file opened in binary mode (byte-stable output).
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw rdiag::DomainError("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

// Grid specs: "<lo>:<hi>:<count>", optionally prefixed "lin:" or "log:".
std::vector<double> parse_grid(const std::string& spec) {
  std::string body = spec;
  bool logspace = false;
  if (body.rfind("log:", 0) == 0) {
    logspace = true;
    body = body.substr(4);
  } else if (body.rfind("lin:", 0) == 0) {
    body = body.substr(4);
  }
  const std::size_t c1 = body.find(':');
  const std::size_t c2 = body.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw rdiag::DomainError("grid spec must be [lin:|log:]<lo>:<hi>:<count>");
  double lo = 0.0, hi = 0.0;
  long count = 0;
  try {
    lo = std::stod(body.substr(0, c1));
    hi = std::stod(body.substr(c1 + 1, c2 - c1 - 1));
    count = std::stol(body.substr(c2 + 1));
  } catch (const std::exception&) {
    throw rdiag::DomainError("unparseable grid spec: " + spec);
  }
  if (count < 1) throw rdiag::DomainError("grid count must be >= 1");
  if (count > 1 && !(hi > lo))
    throw rdiag::DomainError("grid needs hi > lo for count > 1");
  if (logspace && !(lo > 0.0))
    throw rdiag::DomainError("log grid needs lo > 0");
  std::vector<double> out(static_cast<std::size_t>(count));
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  for (long i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(count - 1);
    out[static_cast<std::size_t>(i)] =
        logspace ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f;
  }
  return out;
}

rdiag::PushforwardMap parse_push(const std::string& spec) {
  if (spec == "square") return rdiag::PushforwardMap::square();
  if (spec == "inverse") return rdiag::PushforwardMap::inverse();
  if (spec.rfind("power:", 0) == 0)
    return rdiag::PushforwardMap::power(std::stod(spec.substr(6)));
  if (spec.rfind("scale:", 0) == 0)
    return rdiag::PushforwardMap::scale(std::stod(spec.substr(6)));
  throw rdiag::DomainError(
      "push map must be square, inverse, power:<m>, or scale:<c>");
}

rdiag::AtomicMeasure as_atomic(const rdiag::Measure& mu, std::size_t atoms) {
  if (const auto* am = std::get_if<rdiag::AtomicMeasure>(&mu)) return *am;
  return rdiag::quantile_discretize(std::get<rdiag::NamedDensity>(mu), atoms);
}

nlohmann::json json_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

const char* domain_tag_name(rdiag::TransformDomain tag) {
  switch (tag) {
    case rdiag::TransformDomain::psi_neg_axis: return "psi_neg_axis";
    case rdiag::TransformDomain::chi_interval: return "chi_interval";
    case rdiag::TransformDomain::s_interval: return "s_interval";
    case rdiag::TransformDomain::cauchy_offcut: return "cauchy_offcut";
  }
  return "unknown";
}

struct MeasureOptions {
  std::string measure;
  std::size_t atoms = 10000;
  std::string push;
  bool info = false;
  std::string out;
};

int run_measure(const MeasureOptions& o) {
  rdiag::Measure mu = rdiag::parse_measure_spec(o.measure);
  if (!o.push.empty())
    mu = rdiag::Measure{
        rdiag::pushforward(as_atomic(mu, o.atoms), parse_push(o.push))};
  OutputTarget target(o.out);
  if (o.info) {
    const rdiag::LambdaBounds b = rdiag::lambda_bounds(mu);
    nlohmann::json j{
        {"kernel_mass", rdiag::kernel_mass(mu)},
        {"inner_radius", b.inner},
        {"outer_radius", json_or_null(b.outer)},
        {"dirac", b.dirac},
        {"fk_determinant", rdiag::fk_determinant(mu)},
    };
    if (const auto* am = std::get_if<rdiag::AtomicMeasure>(&mu)) {
      j["atoms"] = am->size();
      j["log_plus_integral"] = rdiag::log_plus_integral(*am);
    }
    target.stream() << j.dump(2) << "\n";
    return 0;
  }
  target.stream() << rdiag::measure_to_json(mu).dump(2) << "\n";
  return 0;
}

struct TransformOptions {
  std::string measure;
  std::string which;
  std::string grid;
  double im = 0.0;
  double eps = 1e-6;
  std::string out;
};

int run_transform(const TransformOptions& o) {
  const rdiag::Measure mu = rdiag::parse_measure_spec(o.measure);
  const std::vector<double> grid = parse_grid(o.grid);
  OutputTarget target(o.out);
  rdiag::CsvWriter csv(target.stream(),
                       {"argument_re", "argument_im", "value_re", "value_im",
                        "domain_tag"});
  auto emit = [&](std::complex<double> arg, std::complex<double> value,
                  rdiag::TransformDomain tag) {
    csv.row({format_double(arg.real()), format_double(arg.imag()),
             format_double(value.real()), format_double(value.imag()),
             domain_tag_name(tag)});
  };
  for (const double x : grid) {
    if (o.which == "psi") {
      emit({x, 0.0}, {rdiag::psi(mu, x), 0.0},
           rdiag::TransformDomain::psi_neg_axis);
    } else if (o.which == "chi") {
      emit({x, 0.0}, {rdiag::chi(mu, x), 0.0},
           rdiag::TransformDomain::chi_interval);
    } else if (o.which == "s") {
      emit({x, 0.0}, {rdiag::s_transform(mu, x), 0.0},
           rdiag::TransformDomain::s_interval);
    } else if (o.which == "s-inverse") {
      emit({x, 0.0}, {rdiag::s_of_inverse(mu, x), 0.0},
           rdiag::TransformDomain::s_interval);
    } else if (o.which == "cauchy") {
      const std::complex<double> lambda{x, o.im};
      emit(lambda, rdiag::cauchy_transform(mu, lambda),
           rdiag::TransformDomain::cauchy_offcut);
    } else if (o.which == "stieltjes") {
      emit({x, o.eps}, {rdiag::stieltjes_density(mu, x, o.eps), 0.0},
           rdiag::TransformDomain::cauchy_offcut);
    } else {
      throw rdiag::DomainError("unknown transform: " + o.which);
    }
  }
  return 0;
}

struct BrownOptions {
  std::string measure;
  std::size_t atoms = 10000;
  std::optional<double> radius;
  std::string grid;
  std::string out;
};

int run_brown(const BrownOptions& o) {
  rdiag::Measure mu = rdiag::parse_measure_spec(o.measure);
  // Only the quotient family carries its squared measure in closed form;
  // every other named family goes through quantile discretization.
  if (const auto* d = std::get_if<rdiag::NamedDensity>(&mu);
      d && d->family != rdiag::Family::abs_z_pow_n)
    mu = rdiag::Measure{rdiag::quantile_discretize(*d, o.atoms)};
  const rdiag::SubordinationContext ctx{mu};
  const rdiag::RadialBrownMeasure rbm = rdiag::radial_cdf(ctx);

  OutputTarget target(o.out);
  if (o.radius) {
    target.stream() << format_double(rbm.cdf(*o.radius)) << "\n";
    return 0;
  }

  std::vector<double> radii;
  if (!o.grid.empty()) {
    radii = parse_grid(o.grid);
  } else {
    radii.reserve(200);
    for (int i = 0; i < 200; ++i) {
      const double t = rbm.t_min() + (rbm.t_max() - rbm.t_min()) * i / 199.0;
      radii.push_back(rbm.radius_at_mass(t));
    }
  }

  const nlohmann::json header{
      {"kernel_mass", rbm.kernel_mass()},
      {"inner_radius", rbm.inner_radius()},
      {"outer_radius", json_or_null(rbm.outer_radius())},
      {"fk_determinant", rdiag::fk_determinant(mu)},
  };
  target.stream() << "# " << header.dump() << "\n";
  rdiag::CsvWriter csv(target.stream(),
                       {"r", "F", "radial_pdf", "planar_density"});
  for (const double r : radii) {
    const rdiag::RadialDensity dens = rdiag::radial_density(rbm, r);
    csv.numeric_row({r, rbm.cdf(r), dens.radial_pdf, dens.planar_density});
  }
  return 0;
}

struct FkdetOptions {
  std::string measure;
  std::string matrix;
  std::string out;
};

int run_fkdet(const FkdetOptions& o) {
  if (o.measure.empty() == o.matrix.empty())
    throw rdiag::DomainError("fkdet needs exactly one of --measure, --matrix");
  OutputTarget target(o.out);
  const double value =
      o.measure.empty()
          ? rdiag::fk_det_matrix(rdiag::load_matrix(o.matrix))
          : rdiag::fk_determinant(rdiag::parse_measure_spec(o.measure));
  target.stream() << format_double(value) << "\n";
  return 0;
}

struct ClosedOptions {
  std::string family = "zn";
  int n = 1;
  std::string what;
  double p = 0.0;
  std::string grid;
  double im = 1e-3;
  std::string out;
};

int run_closed(const ClosedOptions& o) {
  if (o.family != "zn")
    throw rdiag::DomainError("closed supports --family zn only");
  OutputTarget target(o.out);
  if (o.what == "lp") {
    if (!(o.p > 0.0)) throw rdiag::DomainError("--what lp needs --p > 0");
    const double norm = rdiag::closed_forms::lp_norm_zn(o.n, o.p);
    target.stream() << format_double(std::pow(norm, o.p)) << "\n";
    return 0;
  }
  if (o.grid.empty())
    throw rdiag::DomainError("--what " + o.what + " needs --grid");
  const std::vector<double> grid = parse_grid(o.grid);
  if (o.what == "density") {
    rdiag::CsvWriter csv(target.stream(), {"t", "density", "cdf"});
    for (const double t : grid)
      csv.numeric_row({t, rdiag::closed_forms::abs_zn_density(t, o.n),
                       rdiag::closed_forms::abs_zn_cdf(t, o.n)});
    return 0;
  }
  if (o.what == "brown") {
    rdiag::CsvWriter csv(target.stream(),
                         {"r", "planar_density", "radial_cdf"});
    for (const double r : grid)
      csv.numeric_row({r, rdiag::closed_forms::brown_zn_density({r, 0.0}, o.n),
                       rdiag::closed_forms::brown_zn_radial_cdf(r, o.n)});
    return 0;
  }
  if (o.what == "cauchy") {
    rdiag::CsvWriter csv(target.stream(), {"re", "im", "g_re", "g_im"});
    for (const double x : grid) {
      const std::complex<double> g =
          rdiag::closed_forms::g_abs_zn_sq({x, o.im}, o.n);
      csv.numeric_row({x, o.im, g.real(), g.imag()});
    }
    return 0;
  }
  throw rdiag::DomainError("--what must be density, brown, lp, or cauchy");
}

struct SimulateOptions {
  std::string ensemble;
  int n = 0;
  int trials = 1;
  std::uint64_t seed = 12345;
  std::string out;
};

int run_simulate(const SimulateOptions& o) {
  if (o.trials < 1) throw rdiag::DomainError("--trials must be >= 1");
  OutputTarget target(o.out);
  rdiag::CsvWriter csv(target.stream(), {"trial", "kind", "value"});
  for (int trial = 0; trial < o.trials; ++trial) {
    const std::uint64_t seed = rdiag::derive_seed(o.seed, trial);
    if (o.ensemble == "ginibre") {
      const rdiag::EmpiricalSpectrum spec =
          rdiag::singular_values(rdiag::ginibre(o.n, seed));
      for (const double s : spec.singular_values)
        csv.row({std::to_string(trial), "singular_value", format_double(s)});
    } else if (o.ensemble == "spherical") {
      rdiag::EmpiricalSpectrum spec = rdiag::spherical_ensemble(o.n, seed);
      std::sort(spec.eigenvalues.begin(), spec.eigenvalues.end(),
                [](const std::complex<double>& a, const std::complex<double>& b) {
                  const double aa = std::abs(a), ab = std::abs(b);
                  if (aa != ab) return aa < ab;
                  return std::arg(a) < std::arg(b);
                });
      for (const auto& ev : spec.eigenvalues) {
        csv.row({std::to_string(trial), "eig_abs", format_double(std::abs(ev))});
        csv.row({std::to_string(trial), "eig_arg", format_double(std::arg(ev))});
      }
    } else {
      throw rdiag::DomainError("--ensemble must be ginibre or spherical");
    }
  }
  return 0;
}

struct BrownMatrixOptions {
  std::string matrix;
  int nx = 256;
  int ny = 256;
  std::string box = "auto";
  double eps = 0.0;
  std::string out;
};

int run_brown_matrix(const BrownMatrixOptions& o) {
  const rdiag::ComplexMatrix a = rdiag::load_matrix(o.matrix);
  rdiag::BrownBox box;
  if (o.box == "auto") {
    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = x_lo, y_hi = -x_lo;
    for (const auto& ev : rdiag::eigenvalues(a).eigenvalues) {
      x_lo = std::min(x_lo, ev.real());
      x_hi = std::max(x_hi, ev.real());
      y_lo = std::min(y_lo, ev.imag());
      y_hi = std::max(y_hi, ev.imag());
    }
    const double pad =
        0.1 * std::max({x_hi - x_lo, y_hi - y_lo, 1.0});
    box = {x_lo - pad, x_hi + pad, y_lo - pad, y_hi + pad};
  } else {
    std::vector<double> vals;
    std::string body = o.box;
    for (int i = 0; i < 4; ++i) {
      const std::size_t colon = body.find(':');
      const std::string tok =
          colon == std::string::npos ? body : body.substr(0, colon);
      try {
        vals.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw rdiag::DomainError("box must be auto or xmin:xmax:ymin:ymax");
      }
      if (colon == std::string::npos) {
        body.clear();
      } else {
        body = body.substr(colon + 1);
      }
    }
    if (vals.size() != 4 || !body.empty())
      throw rdiag::DomainError("box must be auto or xmin:xmax:ymin:ymax");
    box = {vals[0], vals[1], vals[2], vals[3]};
  }
  const double dx = (box.x_max - box.x_min) / o.nx;
  const double dy = (box.y_max - box.y_min) / o.ny;
  const double eps = o.eps > 0.0 ? o.eps : 0.5 * std::max(dx, dy);
  const rdiag::BrownGrid grid = rdiag::brown_laplacian(a, box, o.nx, o.ny, eps);

  OutputTarget target(o.out);
  const nlohmann::json header{
      {"total_mass", grid.total_mass}, {"eps", grid.eps},
      {"nx", grid.nx},                 {"ny", grid.ny},
      {"clipped_cells", grid.clipped_cells},
      {"min_cell_mass", grid.min_cell_mass},
  };
  target.stream() << "# " << header.dump() << "\n";
  rdiag::CsvWriter csv(target.stream(), {"x", "y", "mass"});
  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix)
      csv.numeric_row({grid.cell_center_x(ix), grid.cell_center_y(iy),
                       grid.mass[static_cast<std::size_t>(iy) * grid.nx + ix]});
  return 0;
}

struct VerifyOptions {
  bool quick = false;
  bool full = false;
  std::string out;
};

int run_verify(const VerifyOptions& o) {
  const rdiag::Tier tier = o.full ? rdiag::Tier::full : rdiag::Tier::quick;
  OutputTarget target(o.out);
  const bool ok = rdiag::print_acceptance_report(target.stream(),
                                                 rdiag::run_acceptance(tier));
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral distributions of rotation-invariant operators"};
  app.require_subcommand(1);

  MeasureOptions mo;
  CLI::App* measure = app.add_subcommand(
      "measure", "inspect, discretize, or push forward a measure");
  measure->add_option("--measure", mo.measure, "named:<family>[:<n>] or JSON path")
      ->required();
  measure->add_option("--atoms", mo.atoms, "discretization size (default 1e4)");
  measure->add_option("--push", mo.push,
                      "square | inverse | power:<m> | scale:<c>");
  measure->add_flag("--info", mo.info, "emit summary statistics instead");
  measure->add_option("--out", mo.out, "output path (default stdout)");

  TransformOptions to;
  CLI::App* transform =
      app.add_subcommand("transform", "evaluate a transform over a grid");
  transform->add_option("--measure", to.measure, "measure spec")->required();
  transform
      ->add_option("--which", to.which,
                   "psi | chi | s | s-inverse | cauchy | stieltjes")
      ->required();
  transform->add_option("--grid", to.grid, "[lin:|log:]<lo>:<hi>:<count>")
      ->required();
  transform->add_option("--im", to.im, "imaginary part for cauchy arguments");
  transform->add_option("--eps", to.eps, "smoothing for stieltjes (default 1e-6)");
  transform->add_option("--out", to.out, "output path");

  BrownOptions bo;
  CLI::App* brown = app.add_subcommand(
      "brown", "radial spectral-measure CDF/density of an operator from mu_|T|");
  brown->add_option("--measure", bo.measure, "measure spec")->required();
  brown->add_option("--atoms", bo.atoms, "discretization size (default 1e4)");
  double brown_r = 0.0;
  CLI::Option* ropt =
      brown->add_option("--r", brown_r, "print F(r) for a single radius");
  brown->add_option("--grid", bo.grid, "radius grid (default: 200-point sweep)");
  brown->add_option("--out", bo.out, "output path");

  FkdetOptions fo;
  CLI::App* fkdet = app.add_subcommand(
      "fkdet", "Fuglede-Kadison determinant of a measure or a matrix");
  fkdet->add_option("--measure", fo.measure, "measure spec");
  fkdet->add_option("--matrix", fo.matrix, "matrix JSON path");
  fkdet->add_option("--out", fo.out, "output path");

  ClosedOptions co;
  CLI::App* closed =
      app.add_subcommand("closed", "closed-form quotient-family evaluations");
  closed->add_option("--family", co.family, "only: zn");
  closed->add_option("--n", co.n, "power parameter (default 1)");
  closed->add_option("--what", co.what, "density | brown | lp | cauchy")
      ->required();
  closed->add_option("--p", co.p, "exponent for --what lp");
  closed->add_option("--grid", co.grid, "evaluation grid");
  closed->add_option("--im", co.im, "imaginary offset for --what cauchy");
  closed->add_option("--out", co.out, "output path");

  SimulateOptions so;
  CLI::App* simulate =
      app.add_subcommand("simulate", "sample random-matrix spectra to CSV");
  simulate->add_option("--ensemble", so.ensemble, "ginibre | spherical")
      ->required();
  simulate->add_option("--n", so.n, "matrix size")->required();
  simulate->add_option("--trials", so.trials, "number of draws (default 1)");
  simulate->add_option("--seed", so.seed, "base seed (default 12345)");
  simulate->add_option("--out", so.out, "output path");

  BrownMatrixOptions bmo;
  CLI::App* brown_matrix = app.add_subcommand(
      "brown-matrix", "spectral-measure grid of a matrix from its log-determinant");
  brown_matrix->add_option("--matrix", bmo.matrix, "matrix JSON path")
      ->required();
  brown_matrix->add_option("--nx", bmo.nx, "grid cells in x (default 256)");
  brown_matrix->add_option("--ny", bmo.ny, "grid cells in y (default 256)");
  brown_matrix->add_option("--box", bmo.box, "auto or xmin:xmax:ymin:ymax");
  brown_matrix->add_option("--eps", bmo.eps,
                           "regularization (default: half a cell)");
  brown_matrix->add_option("--out", bmo.out, "output path");

  VerifyOptions vo;
  CLI::App* verify = app.add_subcommand("verify", "run the acceptance suite");
  CLI::Option* qflag = verify->add_flag("--quick", vo.quick, "small-matrix tier");
  verify->add_flag("--full", vo.full, "full-size tier")->excludes(qflag);
  verify->add_option("--out", vo.out, "report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (measure->parsed()) return run_measure(mo);
    if (transform->parsed()) return run_transform(to);
    if (brown->parsed()) {
      if (ropt->count()) bo.radius = brown_r;
      return run_brown(bo);
    }
    if (fkdet->parsed()) return run_fkdet(fo);
    if (closed->parsed()) return run_closed(co);
    if (simulate->parsed()) return run_simulate(so);
    if (brown_matrix->parsed()) return run_brown_matrix(bmo);
    if (verify->parsed()) return run_verify(vo);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
