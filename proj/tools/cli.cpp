#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "strengthlab/error.hpp"
#include "strengthlab/json_io.hpp"

namespace strengthlab::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::optional<std::uint64_t> p;
  unsigned s = 1;
  std::optional<std::size_t> n;
  std::optional<unsigned> d;
  std::optional<std::string> poly;
  std::optional<std::string> file;
  bool from_stdin = false;
  bool csv = false;
  std::optional<std::uint64_t> budget;
  unsigned threads = 0;
  std::optional<std::uint64_t> seed;

  // subcommand-specific
  std::string point;
  unsigned m = 0;
  std::vector<unsigned> ext{1, 2};
  std::string mode = "exhaustive";
  std::uint64_t samples = 0;
  std::uint64_t trials = 0;
  std::optional<std::string> records;
  bool recursive = false;
};

void add_field_flags(CLI::App* sub, Flags& f) {
  sub->add_option("-p", f.p, "characteristic (prime)");
  sub->add_option("-s", f.s, "extension degree of the coefficient field")->capture_default_str();
  sub->add_option("-n", f.n, "number of variables");
}

void add_input_flags(CLI::App* sub, Flags& f) {
  add_field_flags(sub, f);
  sub->add_option("--poly", f.poly, "polynomial text or JSON");
  sub->add_option("--file", f.file, "file holding polynomial text or JSON");
  sub->add_flag("--stdin", f.from_stdin, "read the polynomial from stdin");
}

void add_run_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--budget", f.budget, "work budget for the operation");
  sub->add_option("--threads", f.threads, "worker threads (0: STRENGTHLAB_THREADS or all cores)");
}

std::string read_all(std::istream& in) { return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}; }

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open " + path);
  return read_all(f);
}

Field field_of(const Flags& f) {
  if (!f.p) throw UsageError("-p is required");
  return f.s == 1 ? Field::prime(*f.p) : Field::of_degree(*f.p, f.s);
}

PolynomialInput load_polynomial(const Flags& f, std::istream& in) {
  const int sources = (f.poly ? 1 : 0) + (f.file ? 1 : 0) + (f.from_stdin ? 1 : 0);
  if (sources != 1) throw UsageError("exactly one of --poly, --file, --stdin is required");
  const std::string text = f.poly ? *f.poly : f.file ? read_file(*f.file) : read_all(in);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw UsageError(std::string("invalid JSON input: ") + e.what());
    }
    auto input = poly_from_json(j);
    if (f.d) input.declared_degree = f.d;
    return input;
  }
  if (!f.n) throw UsageError("-n is required for text input");
  auto trimmed = text;
  while (!trimmed.empty() && (trimmed.back() == '\n' || trimmed.back() == '\r')) trimmed.pop_back();
  return {parse(trimmed, field_of(f), *f.n), f.d};
}

VectorPoint parse_point(const std::string& text, const Polynomial& P, const char* flag) {
  VectorPoint x;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (item.find_first_not_of(" ", used) != std::string::npos) throw std::invalid_argument(item);
      x.coords.push_back(P.field().degree() == 1 ? P.field().from_int(v)
                                                 : static_cast<Elem>(((v % P.field().size()) + P.field().size()) %
                                                                     P.field().size()));
    } catch (const std::logic_error&) {
      throw UsageError(std::string(flag) + ": expected comma-separated integers, got \"" + text + "\"");
    }
  }
  if (x.coords.size() != P.num_vars()) {
    throw UsageError(std::string(flag) + ": expected " + std::to_string(P.num_vars()) + " coordinates");
  }
  return x;
}

AnalyticOptions analytic_options(const Flags& f) { return {f.budget.value_or(kDefaultBudget), f.threads}; }
RankOptions rank_options(const Flags& f) { return {f.budget.value_or(kDefaultRankBudget), f.threads}; }

ScanParams scan_params(const Flags& f) {
  if (!f.p || !f.n || !f.d) throw UsageError("-p, -n and -d are required");
  ScanParams params;
  params.p = static_cast<std::uint32_t>(*f.p);
  params.n = *f.n;
  params.d = *f.d;
  if (f.mode == "exhaustive") {
    params.mode = ScanMode::Exhaustive;
    if (f.budget) params.budget = *f.budget;
  } else if (f.mode == "sample") {
    params.mode = ScanMode::Sample;
    if (!f.seed) throw UsageError("sample mode requires --seed");
    if (f.samples == 0) throw UsageError("sample mode requires --samples N with N > 0");
    params.seed = *f.seed;
    params.samples = f.samples;
  } else {
    throw UsageError("--mode must be exhaustive or sample");
  }
  return params;
}

ExperimentOptions experiment_options(const Flags& f) {
  ExperimentOptions opts;
  opts.threads = f.threads;
  return opts;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact polynomial rank and Gowers-norm experiments over finite fields", "strengthlab"};
  app.require_subcommand(1);
  Flags f;

  auto* eval = app.add_subcommand("eval", "evaluate P at a point");
  add_input_flags(eval, f);
  eval->add_option("--point", f.point, "comma-separated coordinates")->required();

  auto* del = app.add_subcommand("delta", "difference P(x + t) - P(x)");
  add_input_flags(del, f);
  del->add_option("--t", f.point, "comma-separated direction")->required();

  auto* deriv = app.add_subcommand("deriv", "directional derivative along t");
  add_input_flags(deriv, f);
  deriv->add_option("--t", f.point, "comma-separated direction")->required();

  auto* homog = app.add_subcommand("homog", "homogeneous part of degree d");
  add_input_flags(homog, f);
  homog->add_option("-d", f.d, "degree")->required();

  auto* multilin = app.add_subcommand("multilin", "symmetric multilinear form of a homogeneous P");
  add_input_flags(multilin, f);
  multilin->add_option("-d", f.d, "declared degree");

  auto* bias = app.add_subcommand("bias", "exact character counts of P");
  add_input_flags(bias, f);
  add_run_flags(bias, f);

  auto* gowers = app.add_subcommand("gowers", "U_m norm of psi(P)");
  add_input_flags(gowers, f);
  add_run_flags(gowers, f);
  gowers->add_option("-m", f.m, "order m >= 1")->required();
  gowers->add_flag("--recursive", f.recursive, "group by the first difference direction");

  auto* gexact = app.add_subcommand("gowers-exact", "exact U_d value of the degree-d part");
  add_input_flags(gexact, f);
  add_run_flags(gexact, f);
  gexact->add_option("-d", f.d, "degree");

  auto* rk = app.add_subcommand("rank", "rank of the degree-d part with a certificate");
  add_input_flags(rk, f);
  add_run_flags(rk, f);
  rk->add_option("-d", f.d, "degree");

  auto* rext = app.add_subcommand("rank-ext", "rank searched over extension fields");
  add_input_flags(rext, f);
  add_run_flags(rext, f);
  rext->add_option("-d", f.d, "degree");
  rext->add_option("--ext", f.ext, "extension degrees to search")->delimiter(',')->capture_default_str();

  auto* profile = app.add_subcommand("profile", "derivative rank over projective directions");
  add_input_flags(profile, f);
  add_run_flags(profile, f);
  profile->add_option("-d", f.d, "degree");

  auto* scan_cmd = app.add_subcommand("scan", "enumerate or sample homogeneous polynomials");
  add_field_flags(scan_cmd, f);
  add_run_flags(scan_cmd, f);
  scan_cmd->add_option("-d", f.d, "degree");
  scan_cmd->add_option("--mode", f.mode, "exhaustive or sample")->capture_default_str();
  scan_cmd->add_option("--samples", f.samples, "number of samples");
  scan_cmd->add_option("--seed", f.seed, "sampling seed");
  scan_cmd->add_flag("--csv", f.csv, "emit CSV");

  auto* verify = app.add_subcommand("verify", "check the exact identities on sampled polynomials");
  add_field_flags(verify, f);
  add_run_flags(verify, f);
  verify->add_option("-d", f.d, "degree")->required();
  verify->add_option("--trials", f.trials, "number of sampled polynomials")->required();
  verify->add_option("--seed", f.seed, "sampling seed");

  auto* table = app.add_subcommand("table", "empirical table from scan records");
  add_field_flags(table, f);
  add_run_flags(table, f);
  table->add_option("-d", f.d, "degree");
  table->add_option("--records", f.records, "records JSON from scan (otherwise runs a scan)");
  table->add_option("--mode", f.mode, "exhaustive or sample")->capture_default_str();
  table->add_option("--samples", f.samples, "number of samples");
  table->add_option("--seed", f.seed, "sampling seed");
  table->add_flag("--csv", f.csv, "emit CSV");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (f.s == 0) throw UsageError("-s must be at least 1");
    auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();

    if (name == "scan") {
      const auto records = scan(scan_params(f), experiment_options(f));
      out << (f.csv ? records_to_csv(records) : dump(records_to_json(records)));
      return kExitOk;
    }
    if (name == "verify") {
      if (!f.p || !f.n) throw UsageError("-p and -n are required");
      if (!f.seed) throw UsageError("verify requires --seed");
      auto opts = experiment_options(f);
      if (f.budget) opts.budget = *f.budget;
      const auto report = verify_identities(static_cast<std::uint32_t>(*f.p), *f.n, *f.d, f.trials, *f.seed, opts);
      out << dump(report_to_json(report, opts));
      return kExitOk;
    }
    if (name == "table") {
      std::vector<ScanRecord> records;
      if (f.records) {
        try {
          records = records_from_json(Json::parse(read_file(*f.records)));
        } catch (const Json::exception& e) {
          throw UsageError(std::string("invalid records JSON: ") + e.what());
        }
      } else {
        records = scan(scan_params(f), experiment_options(f));
      }
      const auto t = empirical_C(records);
      out << (f.csv ? table_to_csv(t, records) : dump(table_to_json(t, records)));
      return kExitOk;
    }

    const auto input = load_polynomial(f, in);
    const Polynomial& P = input.poly;
    const auto d = input.declared_degree;
    Json result;
    if (name == "eval") {
      const Elem v = evaluate(P, parse_point(f.point, P, "--point"));
      result = {{"value", point_to_json(VectorPoint{{v}}, P.field())[0]}};
    } else if (name == "delta") {
      result = poly_to_json(delta(P, parse_point(f.point, P, "--t")));
    } else if (name == "deriv") {
      result = poly_to_json(directional_derivative(P, parse_point(f.point, P, "--t")));
    } else if (name == "homog") {
      result = poly_to_json(homogeneous_part(P, *d));
    } else if (name == "multilin") {
      result = form_to_json(d ? multilinearize(P, *d) : multilinearize(P));
    } else if (name == "bias") {
      result = counts_to_json(bias_counts(value_table(P)));
    } else if (name == "gowers") {
      const auto opts = analytic_options(f);
      result = norm_to_json(f.recursive ? gowers_recursive(P, f.m, opts) : gowers_norm(value_table(P), f.m, opts));
    } else if (name == "gowers-exact") {
      result = rational_to_json(gowers_top_exact(P, d, analytic_options(f)));
    } else if (name == "rank") {
      result = rank_to_json(rank(P, d, rank_options(f)));
    } else if (name == "rank-ext") {
      if (P.field().degree() != 1) throw UsageError("rank-ext takes a polynomial over the prime field (-s 1)");
      result = extension_summary_to_json(rank_over_extensions(P, f.ext, d, rank_options(f)));
    } else if (name == "profile") {
      result = profile_to_json(derivative_rank_profile(P, d, rank_options(f)));
    }
    out << dump(result);
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (e.is_resource_limit()) return kExitResource;
    return e.kind() == ErrorKind::Internal ? kExitInternal : kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace strengthlab::cli
