#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "geolat/custom.hpp"
#include "geolat/io.hpp"
#include "geolat/product.hpp"
#include "geolat/radial.hpp"
#include "geolat/spectral.hpp"

using namespace geolat;
using io::Json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

/// Thrown for argument combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A lattice that was read from a document and did not validate.
struct ValidationFailure : std::runtime_error {
  ValidationFailure(std::string what, Json report) : std::runtime_error(std::move(what)), report(std::move(report)) {}
  Json report;
};

struct LatticeArgs {
  std::string family;
  int n = -1;
  int r = -1;
  int m = -1;
  int q = -1;
  std::string left;
  std::string right;
  std::string input;
};

struct OutputArgs {
  std::string out;
  std::string format = "table";
  int precision = 12;
};

BuildOptions build_options() {
  BuildOptions options;
  if (const char* cap = std::getenv("LATTICE_SIZE_CAP")) {
    try {
      options.size_cap = std::stoull(cap);
    } catch (const std::exception&) {
      throw UsageError(std::string("LATTICE_SIZE_CAP is not a number: ") + cap);
    }
  }
  return options;
}

int require(int value, const char* flag, const std::string& family) {
  if (value < 0) throw UsageError("--family " + family + " needs " + flag);
  return value;
}

FiniteLattice load_document(const std::string& path) {
  auto parsed = parse_lattice(io::read_file(path), build_options());
  if (!parsed.report.is_geometric)
    throw ValidationFailure(path + " is not a geometric lattice", io::report_to_json(parsed.report, parsed.lattice));
  return std::move(parsed.lattice);
}

std::vector<int> split_ints(const std::string& text) {
  std::vector<int> values;
  std::stringstream stream(text);
  std::string piece;
  while (std::getline(stream, piece, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stoi(piece, &used));
      if (used != piece.size()) throw std::invalid_argument(piece);
    } catch (const std::exception&) {
      throw UsageError("bad number '" + piece + "' in " + text);
    }
  }
  return values;
}

/// "boolean:N", "uniform:R,M", "projective:R,Q", "affine:R,Q" or a file.
FiniteLattice load_source(const std::string& source) {
  const auto colon = source.find(':');
  if (colon != std::string::npos) {
    const std::string family = source.substr(0, colon);
    const auto args = split_ints(source.substr(colon + 1));
    const auto options = build_options();
    auto arity = [&](std::size_t count) {
      if (args.size() != count) throw UsageError(source + ": " + family + " takes " + std::to_string(count) + " numbers");
    };
    if (family == "boolean") return arity(1), build_boolean(args[0], options);
    if (family == "uniform") return arity(2), build_uniform(args[0], args[1], options);
    if (family == "projective") return arity(2), build_projective(args[0], args[1], options);
    if (family == "affine") return arity(2), build_affine(args[0], args[1], options);
  }
  return load_document(source);
}

FiniteLattice load_lattice(const LatticeArgs& args) {
  const auto& f = args.family;
  const bool has_family_flags = args.n >= 0 || args.r >= 0 || args.m >= 0 || args.q >= 0;
  if (f.empty()) throw UsageError("a lattice source is required: --family ...");
  if (f == "custom") {
    if (args.input.empty()) throw UsageError("--family custom needs --input <file>");
    if (has_family_flags) throw UsageError("--family custom takes no --n/--r/--m/--q");
    return load_document(args.input);
  }
  if (!args.input.empty()) throw UsageError("--input is only valid with --family custom");
  const auto options = build_options();
  if (f == "boolean") return build_boolean(require(args.n, "--n", f), options);
  if (f == "uniform") return build_uniform(require(args.r, "--r", f), require(args.m, "--m", f), options);
  if (f == "projective") return build_projective(require(args.r, "--r", f), require(args.q, "--q", f), options);
  if (f == "affine") return build_affine(require(args.r, "--r", f), require(args.q, "--q", f), options);
  if (f == "product") {
    if (args.left.empty() || args.right.empty()) throw UsageError("--family product needs --left and --right");
    return build_product(load_source(args.left), load_source(args.right), options);
  }
  throw UsageError("unknown family " + f);
}

void add_lattice_options(CLI::App* command, LatticeArgs& args) {
  command->add_option("--family", args.family, "boolean|uniform|projective|affine|product|custom")
      ->check(CLI::IsMember({"boolean", "uniform", "projective", "affine", "product", "custom"}));
  command->add_option("--n", args.n, "ground set size (boolean)");
  command->add_option("--r", args.r, "rank");
  command->add_option("--m", args.m, "ground set size (uniform)");
  command->add_option("--q", args.q, "prime field size");
  command->add_option("--left", args.left, "left factor: family:args or lattice file");
  command->add_option("--right", args.right, "right factor: family:args or lattice file");
  command->add_option("--input", args.input, "custom lattice file");
}

void add_output_options(CLI::App* command, OutputArgs& out) {
  command->add_option("--out", out.out, "write structured text to this file");
  command->add_option("--format", out.format, "table|machine")->check(CLI::IsMember({"table", "machine"}));
  command->add_option("--precision", out.precision, "significant digits for floats")->check(CLI::Range(1, 17));
}

/// Prints `doc` in machine mode or `table` otherwise; `doc` also goes to --out.
void emit(const OutputArgs& out, const Json& doc, const std::string& table) {
  if (!out.out.empty()) io::write_file(out.out, doc.dump(1) + "\n");
  if (out.format == "machine")
    std::cout << doc.dump(1) << "\n";
  else
    std::cout << table;
}

std::string join_strings(const std::vector<std::string>& parts, const char* separator = ", ") {
  std::string text;
  for (std::size_t i = 0; i < parts.size(); ++i) text += (i ? separator : "") + parts[i];
  return text;
}

std::string join_rationals(const std::vector<Rational>& values) {
  std::vector<std::string> parts;
  for (const auto& v : values) parts.push_back(to_string(v));
  return join_strings(parts);
}

// --- subcommands -----------------------------------------------------------

int run_build(const LatticeArgs& args, const OutputArgs& out) {
  const auto L = load_lattice(args);
  const auto doc = Json::parse(serialize_lattice(L));
  std::ostringstream table;
  const auto layers = rank_layers(L);
  table << L.family_tag() << ": " << L.size() << " elements, rank " << L.top_rank() << ", " << L.cover_count()
        << " covers\n";
  for (int k = 0; k <= L.top_rank(); ++k) {
    table << "rank " << k << " (" << layers.sizes[k] << "):";
    const auto layer = L.layer(k);
    const std::size_t shown = std::min<std::size_t>(layer.size(), 16);
    for (std::size_t i = 0; i < shown; ++i) table << " " << L.label(layer[i]);
    if (shown < layer.size()) table << " ... (" << layer.size() - shown << " more)";
    table << "\n";
  }
  emit(out, doc, table.str());
  return kExitOk;
}

int run_validate(const std::string& file, const LatticeArgs& args, const OutputArgs& out) {
  std::optional<ParsedLattice> parsed;
  if (!file.empty()) {
    if (!args.family.empty()) throw UsageError("give either a file or --family, not both");
    parsed.emplace(parse_lattice(io::read_file(file), build_options()));
  } else {
    auto L = load_lattice(args);
    auto report = validate(L);
    parsed.emplace(ParsedLattice{std::move(L), std::move(report)});
  }
  const auto& [L, report] = *parsed;
  std::ostringstream table;
  for (const auto& check : report.checks) {
    table << (check.passed ? "pass  " : "FAIL  ") << check.name << (check.exhaustive ? "" : " (sampled)");
    if (check.counterexample)
      table << "  counterexample: " << L.label(check.counterexample->first) << ", "
            << L.label(check.counterexample->second);
    if (!check.note.empty()) table << "  " << check.note;
    table << "\n";
  }
  table << "geometric: " << (report.is_geometric ? "yes" : "no") << "\n";
  if (!report.note.empty()) table << "note: " << report.note << "\n";
  emit(out, io::report_to_json(report, L), table.str());
  return report.is_geometric ? kExitOk : kExitValidation;
}

int run_diamond_table(const LatticeArgs& args, const OutputArgs& out) {
  const auto L = load_lattice(args);
  if (L.size() > 64) throw UsageError("diamond-table is limited to 64 elements, lattice has " + std::to_string(L.size()));
  Json rows = Json::array();
  std::size_t width = 1;
  for (ElementId x = 0; x < L.size(); ++x) width = std::max(width, L.label(x).size());
  std::ostringstream table;
  auto cell = [&](const std::string& text) {
    table << text << std::string(width + 2 - text.size(), ' ');
  };
  cell("<>");
  for (ElementId y = 0; y < L.size(); ++y) cell(L.label(y));
  table << "\n";
  for (ElementId x = 0; x < L.size(); ++x) {
    Json row = Json::array();
    cell(L.label(x));
    for (ElementId y = 0; y < L.size(); ++y) {
      const auto d = diamond(L, x, y);
      row.push_back(d.is_zero() ? Json(nullptr) : Json(*d.value));
      cell(d.is_zero() ? "0" : L.label(*d.value));
    }
    rows.push_back(std::move(row));
    table << "\n";
  }
  Json labels = Json::array();
  for (ElementId x = 0; x < L.size(); ++x) labels.push_back(L.label(x));
  emit(out, Json{{"labels", labels}, {"table", rows}}, table.str());
  return kExitOk;
}

int run_hamiltonian(const LatticeArgs& args, const OutputArgs& out) {
  const auto L = load_lattice(args);
  const auto H = hamiltonian(L);
  std::ostringstream table;
  table << "dim " << H.dim() << ", " << H.nonzeros() << " nonzero entries\n";
  for (const auto& t : H.triplets())
    table << L.label(t.row) << " <- " << L.label(t.col) << "  " << to_string(t.value) << "\n";
  emit(out, io::operator_to_json(H), table.str());
  return kExitOk;
}

int run_jacobi(const LatticeArgs& args, const OutputArgs& out) {
  const auto L = load_lattice(args);
  const auto H = hamiltonian(L);
  const auto J = jacobi_from_compression(L, H);
  const auto invariance = radial_invariance(L, H);
  std::ostringstream table;
  table << "k  n_k  W_k  beta_k^2  beta_k\n";
  for (int k = 0; k < J.r; ++k)
    table << k << "  " << J.layers.sizes[k] << "  " << J.cover_weights[k] << "  " << to_string(J.beta_sq[k]) << "  "
          << io::format_float(J.beta[k], out.precision) << "\n";
  table << "radially invariant: " << (invariance.invariant ? "yes" : "no") << "\n";
  emit(out, io::jacobi_to_json(J, &invariance, out.precision), table.str());
  return kExitOk;
}

int run_resolvent(const LatticeArgs& args, const OutputArgs& out, bool reduced) {
  const auto L = load_lattice(args);
  auto g = resolvent(jacobi_from_compression(L, hamiltonian(L)));
  if (reduced) g = g.reduced();
  std::ostringstream table;
  table << "numerator: " << join_strings(g.numerator().coefficient_strings()) << "\n"
        << "denominator: " << join_strings(g.denominator().coefficient_strings()) << "\n";
  emit(out, io::resolvent_to_json(g), table.str());
  return kExitOk;
}

int run_moments(const LatticeArgs& args, const OutputArgs& out, int max_k, const std::string& via) {
  const auto L = load_lattice(args);
  const auto H = hamiltonian(L);
  Json doc;
  std::ostringstream table;
  std::optional<MomentSequence> full, radial;
  if (via != "radial") {
    full = vacuum_moments_full(L, H, max_k);
    doc["full"] = io::moments_to_json(*full)["moments"];
    table << "full:   " << join_rationals(*full) << "\n";
  }
  if (via != "full") {
    radial = vacuum_moments_radial(jacobi_from_compression(L, H), max_k);
    doc["radial"] = io::moments_to_json(*radial)["moments"];
    table << "radial: " << join_rationals(*radial) << "\n";
  }
  if (full && radial) {
    doc["agree"] = *full == *radial;
    table << "agree: " << (*full == *radial ? "yes" : "no") << "\n";
  }
  emit(out, doc, table.str());
  return kExitOk;
}

std::string measure_table(const SpectralMeasure& mu, int precision) {
  std::ostringstream table;
  table << "eigenvalue  weight\n";
  for (const auto& atom : mu.atoms)
    table << io::format_float(atom.eigenvalue, precision) << "  " << io::format_float(atom.weight, precision) << "\n";
  return table.str();
}

Json measure_json(const SpectralMeasure& mu, int precision) {
  Json atoms = Json::array();
  for (const auto& atom : mu.atoms)
    atoms.push_back({std::stod(io::format_float(atom.eigenvalue, precision)),
                     std::stod(io::format_float(atom.weight, precision))});
  return Json{{"atoms", atoms}};
}

int run_spectrum(const LatticeArgs& args, const OutputArgs& out) {
  const auto L = load_lattice(args);
  const auto mu = eigendecompose(jacobi_from_compression(L, hamiltonian(L)));
  emit(out, measure_json(mu, out.precision), measure_table(mu, out.precision));
  return kExitOk;
}

int run_product_check(const std::string& left, const std::string& right, const OutputArgs& out, int max_d, int max_k) {
  if (left.empty() || right.empty()) throw UsageError("product-check needs --left and --right");
  const ProductContext ctx(load_source(left), load_source(right));
  const auto& l = ctx.left();
  const auto& r = ctx.right();

  const auto kron = kronecker_sum_check(l, r);

  std::size_t checked = 0;
  std::optional<std::string> shuffle_failure;
  for (ElementId x1 = 0; x1 < l.size() && !shuffle_failure; ++x1)
    for (ElementId y1 = 0; y1 < l.size() && !shuffle_failure; ++y1) {
      if (!l.leq(x1, y1)) continue;
      for (ElementId x2 = 0; x2 < r.size() && !shuffle_failure; ++x2)
        for (ElementId y2 = 0; y2 < r.size(); ++y2) {
          if (!r.leq(x2, y2) || l.rank(y1) - l.rank(x1) + r.rank(y2) - r.rank(x2) > max_d) continue;
          const auto e = shuffle_entry(ctx, {x1, x2}, {y1, y2});
          ++checked;
          if (e.formula != e.direct) {
            shuffle_failure = "(" + l.label(x1) + "," + r.label(x2) + ") -> (" + l.label(y1) + "," + r.label(y2) +
                              "): formula " + to_string(e.formula) + ", direct " + to_string(e.direct);
            break;
          }
        }
    }

  const auto convolved = convolve_moments(vacuum_moments_full(l, ctx.left_hamiltonian(), max_k),
                                          vacuum_moments_full(r, ctx.right_hamiltonian(), max_k), max_k);
  const auto direct = vacuum_moments_full(ctx.product(), ctx.product_hamiltonian(), max_k);
  const bool moments_equal = convolved == direct;

  Json doc;
  doc["left"] = l.family_tag();
  doc["right"] = r.family_tag();
  doc["kronecker_sum"] = kron.equal;
  if (!kron.equal) doc["kronecker_detail"] = kron.detail;
  doc["shuffle"] = !shuffle_failure;
  doc["shuffle_entries_checked"] = checked;
  if (shuffle_failure) doc["shuffle_detail"] = *shuffle_failure;
  doc["moment_convolution"] = moments_equal;
  doc["max_d"] = max_d;
  doc["max_k"] = max_k;

  std::ostringstream table;
  table << l.family_tag() << " x " << r.family_tag() << "\n"
        << "kronecker sum:      " << (kron.equal ? "equal" : "DIFFERENT " + kron.detail) << "\n"
        << "shuffle formula:    " << (shuffle_failure ? "FAILED " + *shuffle_failure : "holds") << " (" << checked
        << " entries, d <= " << max_d << ")\n"
        << "moment convolution: " << (moments_equal ? "equal" : "DIFFERENT") << " (K = " << max_k << ")\n";
  emit(out, doc, table.str());
  return kron.equal && !shuffle_failure && moments_equal ? kExitOk : kExitValidation;
}

SpectralMeasure load_measure(const std::string& path) {
  Json doc;
  try {
    doc = Json::parse(io::read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw LatticeError(ErrorKind::ParseError, path + ": " + e.what());
  }
  return io::measure_from_json(doc);
}

int run_convolve(const std::string& left, const std::string& right, const OutputArgs& out, double tolerance) {
  if (left.empty() || right.empty()) throw UsageError("convolve needs --left and --right measure files");
  const auto mu = convolve_measures(load_measure(left), load_measure(right), tolerance);
  emit(out, measure_json(mu, out.precision), measure_table(mu, out.precision));
  return kExitOk;
}

/// Runs every applicable invariant; stops at the first failure.
int run_verify(const LatticeArgs& args, const OutputArgs& out) {
  const auto L = load_lattice(args);
  Json results = Json::array();
  std::ostringstream table;
  bool ok = true;
  auto check = [&](const std::string& name, const std::function<std::string()>& body) {
    if (!ok) return;
    std::string failure;
    try {
      failure = body();
    } catch (const std::exception& e) {
      failure = e.what();
    }
    ok = failure.empty();
    Json entry{{"name", name}, {"passed", ok}};
    if (!ok) entry["detail"] = failure;
    results.push_back(std::move(entry));
    table << (ok ? "pass  " : "FAIL  ") << name << (ok ? "" : ": " + failure) << "\n";
  };

  check("geometric lattice", [&] {
    const auto report = validate(L);
    for (const auto& c : report.checks)
      if (!c.passed) return c.name + " fails";
    return std::string();
  });
  const auto H = hamiltonian(L);
  check("hamiltonian symmetric with zero diagonal", [&] {
    if (!H.is_symmetric()) return std::string("not symmetric");
    for (ElementId x = 0; x < L.size(); ++x)
      if (H.entry(x, x) != 0) return "nonzero diagonal at " + L.label(x);
    return std::string();
  });
  check("hamiltonian changes rank by one", [&] {
    for (ElementId x = 0; x < L.size(); ++x)
      for (const auto& [row, value] : H.column(x))
        if (std::abs(L.rank(row) - L.rank(x)) != 1) return "entry " + L.label(row) + ", " + L.label(x);
    return std::string();
  });
  check("hamiltonian equals cover formula", [&] {
    return H == hamiltonian_from_covers(L) ? std::string() : std::string("entries differ");
  });
  check("annihilation is transpose of creation", [&] {
    for (ElementId a : L.atoms())
      if (!(annihilation_operator(L, a) == creation_operator(L, a).transpose())) return "atom " + L.label(a);
    return std::string();
  });
  const auto J = jacobi_from_compression(L, H);
  check("cover formula equals compression", [&] {
    return jacobi_from_formula(L).same_coefficients(J) ? std::string() : std::string("beta^2 differ");
  });
  check("odd vacuum moments vanish", [&] {
    const auto m = vacuum_moments_full(L, H, 11);
    for (int k = 1; k <= 11; k += 2)
      if (m[k] != 0) return "m_" + std::to_string(k) + " = " + to_string(m[k]);
    return std::string();
  });
  const int order = std::max(2 * J.r, 10);
  const auto radial = vacuum_moments_radial(J, order);
  check("resolvent series equals radial moments", [&] {
    return resolvent(J).series(order) == radial ? std::string() : std::string("series differs");
  });
  const auto invariance = radial_invariance(L, H);
  if (invariance.invariant) {
    check("full moments equal radial moments", [&] {
      return vacuum_moments_full(L, H, order) == radial ? std::string() : std::string("moments differ");
    });
  }
  check("spectral measure reproduces moments", [&] {
    const auto mu = eigendecompose(J);
    if (std::abs(mu.total_weight() - 1) > 1e-10) return std::string("weights do not sum to one");
    for (int k = 0; k <= 10; ++k) {
      const double expected = radial[k].get_d();
      if (std::abs(mu.moment(k) - expected) > 1e-8 * std::max(1.0, std::abs(expected)))
        return "moment " + std::to_string(k);
    }
    return std::string();
  });
  std::optional<FamilySpec> family;
  if (args.family == "boolean") family = FamilySpec{Family::Boolean, args.n};
  if (args.family == "projective") family = FamilySpec{Family::Projective, args.r, args.q};
  if (args.family == "affine") family = FamilySpec{Family::Affine, args.r, args.q};
  if (family) {
    check("closed-form coefficients", [&] {
      for (int k = 0; k < J.r; ++k)
        if (closed_form_beta(*family, k).beta_sq != J.beta_sq[k]) return "k = " + std::to_string(k);
      return std::string();
    });
  }
  if (args.family == "boolean") {
    check("boolean spectral law", [&] {
      const auto mu = eigendecompose(J);
      const auto closed = boolean_closed_form(args.n);
      if (mu.atoms.size() != closed.atoms.size()) return std::string("atom count");
      for (std::size_t i = 0; i < mu.atoms.size(); ++i)
        if (std::abs(mu.atoms[i].eigenvalue - closed.atoms[i].eigenvalue) > 1e-10 ||
            std::abs(mu.atoms[i].weight - closed.atoms[i].weight) > 1e-10)
          return "atom " + std::to_string(i);
      return std::string();
    });
  }
  table << "radially invariant: " << (invariance.invariant ? "yes" : "no") << "\n"
        << (ok ? "all checks passed" : "verification failed") << "\n";
  emit(out, Json{{"family", L.family_tag()}, {"checks", results}, {"passed", ok}}, table.str());
  return ok ? kExitOk : kExitValidation;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SizeBound:
    case ErrorKind::InvalidArgument:
    case ErrorKind::NotPrime:
    case ErrorKind::NotAtom:
    case ErrorKind::NotComparable:
    case ErrorKind::InsufficientLength:
    case ErrorKind::DimensionMismatch:
      return kExitUsage;
    default:
      return kExitValidation;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operators, Jacobi matrices and spectra of finite geometric lattices", "lattice"};
  app.require_subcommand(1);
  LatticeArgs args;
  OutputArgs out;

  auto* build = app.add_subcommand("build", "build a lattice and print its elements");
  auto* validate_cmd = app.add_subcommand("validate", "check the lattice axioms of a lattice file");
  auto* table = app.add_subcommand("diamond-table", "print the diamond product table (up to 64 elements)");
  auto* ham = app.add_subcommand("hamiltonian", "print the lattice Hamiltonian");
  auto* jacobi = app.add_subcommand("jacobi", "radial Jacobi coefficients");
  auto* resolvent_cmd = app.add_subcommand("resolvent", "vacuum resolvent as a rational function");
  auto* moments = app.add_subcommand("moments", "exact vacuum moments");
  auto* spectrum = app.add_subcommand("spectrum", "vacuum spectral measure");
  auto* product_check = app.add_subcommand("product-check", "Kronecker, shuffle and convolution laws on a product");
  auto* convolve = app.add_subcommand("convolve", "convolve two spectral measure files");
  auto* verify = app.add_subcommand("verify", "run every applicable invariant");

  for (auto* command : {build, validate_cmd, table, ham, jacobi, resolvent_cmd, moments, spectrum, verify})
    add_lattice_options(command, args);
  for (auto* command : app.get_subcommands([](const CLI::App*) { return true; })) add_output_options(command, out);

  std::string validate_file;
  validate_cmd->add_option("file", validate_file, "lattice document");
  bool reduced = false;
  resolvent_cmd->add_flag("--reduced", reduced, "cancel common factors");
  int max_k = 10;
  std::string via = "both";
  moments->add_option("--max-k", max_k, "highest moment")->check(CLI::NonNegativeNumber);
  moments->add_option("--via", via, "full|radial|both")->check(CLI::IsMember({"full", "radial", "both"}));
  std::string left, right;
  int max_d = 4, product_k = 8;
  product_check->add_option("--left", left, "family:args or lattice file")->required();
  product_check->add_option("--right", right, "family:args or lattice file")->required();
  product_check->add_option("--max-d", max_d, "largest rank distance for shuffle entries")->check(CLI::NonNegativeNumber);
  product_check->add_option("--max-k", product_k, "moment order for the convolution check")->check(CLI::NonNegativeNumber);
  double tolerance = 1e-9;
  convolve->add_option("--left", left, "measure file")->required();
  convolve->add_option("--right", right, "measure file")->required();
  convolve->add_option("--tolerance", tolerance, "atom merging distance")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*build) return run_build(args, out);
    if (*validate_cmd) return run_validate(validate_file, args, out);
    if (*table) return run_diamond_table(args, out);
    if (*ham) return run_hamiltonian(args, out);
    if (*jacobi) return run_jacobi(args, out);
    if (*resolvent_cmd) return run_resolvent(args, out, reduced);
    if (*moments) return run_moments(args, out, max_k, via);
    if (*spectrum) return run_spectrum(args, out);
    if (*product_check) return run_product_check(left, right, out, max_d, product_k);
    if (*convolve) return run_convolve(left, right, out, tolerance);
    if (*verify) return run_verify(args, out);
  } catch (const UsageError& e) {
    std::cerr << "lattice: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const ValidationFailure& e) {
    std::cerr << "lattice: " << e.what() << "\n" << e.report.dump(1) << "\n";
    return kExitValidation;
  } catch (const LatticeError& e) {
    std::cerr << "lattice: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "lattice: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}
