#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "strengthlab/error.hpp"
#include "strengthlab/json_io.hpp"

namespace py = pybind11;
using namespace strengthlab;

namespace {

// Polynomials cross the boundary as text (with p, n, s) or as a JSON
// document; every result goes back as a JSON string.
PolynomialInput load(const std::string& poly, std::uint64_t p, std::size_t n, unsigned s, std::optional<unsigned> d) {
  const auto first = poly.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && poly[first] == '{') {
    Json j;
    try {
      j = Json::parse(poly);
    } catch (const Json::parse_error& e) {
      fail(ErrorKind::InvalidArgument, std::string("invalid JSON: ") + e.what());
    }
    auto in = poly_from_json(j);
    if (d) in.declared_degree = d;
    return in;
  }
  const Field f = s == 1 ? Field::prime(p) : Field::of_degree(p, s);
  return {parse(poly, f, n), d};
}

VectorPoint point(const Polynomial& P, const std::vector<std::int64_t>& xs) {
  if (xs.size() != P.num_vars()) fail(ErrorKind::DimensionMismatch, "point has the wrong number of coordinates");
  VectorPoint x;
  const std::int64_t q = P.field().size();
  for (auto v : xs) x.coords.push_back(static_cast<Elem>(((v % q) + q) % q));
  return x;
}

ScanParams scan_params(std::uint32_t p, std::size_t n, unsigned d, const std::string& mode, std::uint64_t samples,
                       std::optional<std::uint64_t> seed, std::optional<std::uint64_t> budget) {
  ScanParams params;
  params.p = p;
  params.n = n;
  params.d = d;
  if (mode == "sample") {
    if (!seed) fail(ErrorKind::InvalidArgument, "sample mode requires a seed");
    params.mode = ScanMode::Sample;
    params.samples = samples;
    params.seed = *seed;
  } else if (mode != "exhaustive") {
    fail(ErrorKind::InvalidArgument, "mode must be 'exhaustive' or 'sample'");
  }
  if (budget) params.budget = *budget;
  return params;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact polynomial rank and Gowers-norm computations over finite fields";

  static py::exception<Error> base(m, "StrengthlabError", PyExc_ValueError);
  static py::exception<Error> resource(m, "ResourceLimitError", base.ptr());
  py::register_exception_translator([](std::exception_ptr ptr) {
    try {
      if (ptr) std::rethrow_exception(ptr);
    } catch (const Error& e) {
      const std::string msg = std::string(to_string(e.kind())) + ": " + e.what();
      if (e.is_resource_limit()) {
        resource(msg.c_str());
      } else {
        base(msg.c_str());
      }
    }
  });

  using release = py::call_guard<py::gil_scoped_release>;
  m.def(
      "parse",
      [](const std::string& poly, std::uint64_t p, std::size_t n, unsigned s) {
        return dump(poly_to_json(load(poly, p, n, s, std::nullopt).poly));
      },
      py::arg("poly"), py::arg("p") = 0, py::arg("n") = 0, py::arg("s") = 1);

  m.def(
      "to_text",
      [](const std::string& poly, std::uint64_t p, std::size_t n, unsigned s) {
        return to_string(load(poly, p, n, s, std::nullopt).poly);
      },
      py::arg("poly"), py::arg("p") = 0, py::arg("n") = 0, py::arg("s") = 1);

  m.def(
      "evaluate",
      [](const std::string& poly, const std::vector<std::int64_t>& x, std::uint64_t p, std::size_t n, unsigned s) {
        const auto P = load(poly, p, n, s, std::nullopt).poly;
        const Elem v = evaluate(P, point(P, x));
        return dump(Json{{"value", point_to_json(VectorPoint{{v}}, P.field())[0]}});
      },
      py::arg("poly"), py::arg("x"), py::arg("p") = 0, py::arg("n") = 0, py::arg("s") = 1);

  m.def(
      "delta",
      [](const std::string& poly, const std::vector<std::int64_t>& t, std::uint64_t p, std::size_t n, unsigned s) {
        const auto P = load(poly, p, n, s, std::nullopt).poly;
        return dump(poly_to_json(delta(P, point(P, t))));
      },
      py::arg("poly"), py::arg("t"), py::arg("p") = 0, py::arg("n") = 0, py::arg("s") = 1);

  m.def(
      "derivative",
      [](const std::string& poly, const std::vector<std::int64_t>& t, std::uint64_t p, std::size_t n, unsigned s) {
        const auto P = load(poly, p, n, s, std::nullopt).poly;
        return dump(poly_to_json(directional_derivative(P, point(P, t))));
      },
      py::arg("poly"), py::arg("t"), py::arg("p") = 0, py::arg("n") = 0, py::arg("s") = 1);

  m.def(
      "homogeneous_part",
      [](const std::string& poly, unsigned d, std::uint64_t p, std::size_t n, unsigned s) {
        return dump(poly_to_json(homogeneous_part(load(poly, p, n, s, std::nullopt).poly, d)));
      },
      py::arg("poly"), py::arg("d"), py::arg("p") = 0, py::arg("n") = 0, py::arg("s") = 1);

  m.def(
      "multilinearize",
      [](const std::string& poly, std::uint64_t p, std::size_t n, unsigned s, std::optional<unsigned> d) {
        const auto in = load(poly, p, n, s, d);
        return dump(form_to_json(in.declared_degree ? multilinearize(in.poly, *in.declared_degree)
                                                    : multilinearize(in.poly)));
      },
      py::arg("poly"), py::arg("p") = 0, py::arg("n") = 0, py::arg("s") = 1, py::arg("d") = py::none());

  m.def(
      "bias",
      [](const std::string& poly, std::uint64_t p, std::size_t n, unsigned s) {
        return dump(counts_to_json(bias_counts(value_table(load(poly, p, n, s, std::nullopt).poly))));
      },
      py::arg("poly"), py::arg("p") = 0, py::arg("n") = 0, py::arg("s") = 1, release());

  m.def(
      "gowers",
      [](const std::string& poly, unsigned order, std::uint64_t p, std::size_t n, unsigned s, bool recursive,
         std::uint64_t budget, unsigned threads) {
        const auto P = load(poly, p, n, s, std::nullopt).poly;
        const AnalyticOptions opts{budget, threads};
        return dump(norm_to_json(recursive ? gowers_recursive(P, order, opts) : gowers_norm(value_table(P), order, opts)));
      },
      py::arg("poly"), py::arg("m"), py::arg("p") = 0, py::arg("n") = 0, py::arg("s") = 1, py::arg("recursive") = false,
      py::arg("budget") = kDefaultBudget, py::arg("threads") = 0, release());

  m.def(
      "gowers_exact",
      [](const std::string& poly, std::uint64_t p, std::size_t n, unsigned s, std::optional<unsigned> d,
         std::uint64_t budget, unsigned threads) {
        const auto in = load(poly, p, n, s, d);
        return dump(rational_to_json(gowers_top_exact(in.poly, in.declared_degree, {budget, threads})));
      },
      py::arg("poly"), py::arg("p") = 0, py::arg("n") = 0, py::arg("s") = 1, py::arg("d") = py::none(),
      py::arg("budget") = kDefaultBudget, py::arg("threads") = 0, release());

  m.def(
      "rank",
      [](const std::string& poly, std::uint64_t p, std::size_t n, unsigned s, std::optional<unsigned> d,
         std::uint64_t budget, unsigned threads) {
        const auto in = load(poly, p, n, s, d);
        return dump(rank_to_json(rank(in.poly, in.declared_degree, {budget, threads})));
      },
      py::arg("poly"), py::arg("p") = 0, py::arg("n") = 0, py::arg("s") = 1, py::arg("d") = py::none(),
      py::arg("budget") = kDefaultRankBudget, py::arg("threads") = 0, release());

  m.def(
      "rank_over_extensions",
      [](const std::string& poly, std::vector<unsigned> ext, std::uint64_t p, std::size_t n, std::optional<unsigned> d,
         std::uint64_t budget, unsigned threads) {
        const auto in = load(poly, p, n, 1, d);
        return dump(extension_summary_to_json(rank_over_extensions(in.poly, ext, in.declared_degree, {budget, threads})));
      },
      py::arg("poly"), py::arg("ext") = std::vector<unsigned>{1, 2}, py::arg("p") = 0, py::arg("n") = 0,
      py::arg("d") = py::none(), py::arg("budget") = kDefaultRankBudget, py::arg("threads") = 0, release());

  m.def(
      "profile",
      [](const std::string& poly, std::uint64_t p, std::size_t n, unsigned s, std::optional<unsigned> d,
         std::uint64_t budget, unsigned threads) {
        const auto in = load(poly, p, n, s, d);
        return dump(profile_to_json(derivative_rank_profile(in.poly, in.declared_degree, {budget, threads})));
      },
      py::arg("poly"), py::arg("p") = 0, py::arg("n") = 0, py::arg("s") = 1, py::arg("d") = py::none(),
      py::arg("budget") = kDefaultRankBudget, py::arg("threads") = 0, release());

  m.def(
      "scan",
      [](std::uint32_t p, std::size_t n, unsigned d, const std::string& mode, std::uint64_t samples,
         std::optional<std::uint64_t> seed, std::optional<std::uint64_t> budget, unsigned threads, bool csv) {
        ExperimentOptions opts;
        opts.threads = threads;
        const auto records = scan(scan_params(p, n, d, mode, samples, seed, budget), opts);
        return csv ? records_to_csv(records) : dump(records_to_json(records));
      },
      py::arg("p"), py::arg("n"), py::arg("d"), py::arg("mode") = "exhaustive", py::arg("samples") = 0,
      py::arg("seed") = py::none(), py::arg("budget") = py::none(), py::arg("threads") = 0, py::arg("csv") = false,
      release());

  m.def(
      "verify",
      [](std::uint32_t p, std::size_t n, unsigned d, std::uint64_t trials, std::uint64_t seed, unsigned threads) {
        ExperimentOptions opts;
        opts.threads = threads;
        return dump(report_to_json(verify_identities(p, n, d, trials, seed, opts), opts));
      },
      py::arg("p"), py::arg("n"), py::arg("d"), py::arg("trials"), py::arg("seed"), py::arg("threads") = 0, release());

  m.def(
      "table",
      [](const std::string& records_json, bool csv) {
        Json j;
        try {
          j = Json::parse(records_json);
        } catch (const Json::parse_error& e) {
          fail(ErrorKind::InvalidArgument, std::string("invalid JSON: ") + e.what());
        }
        const auto records = records_from_json(j);
        const auto t = empirical_C(records);
        return csv ? table_to_csv(t, records) : dump(table_to_json(t, records));
      },
      py::arg("records"), py::arg("csv") = false, release());
}
