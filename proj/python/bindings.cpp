// Python bindings: permutations travel as lists of 1-based ranks.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "seqbias/csv.hpp"
#include "seqbias/estimator.hpp"
#include "seqbias/experiments.hpp"
#include "seqbias/metrics.hpp"
#include "seqbias/model.hpp"
#include "seqbias/permutation.hpp"

namespace py = pybind11;
using namespace seqbias;

namespace {

using Ranks = std::vector<int>;

Ranks to_list(const Permutation& p) { return {p.ranks().begin(), p.ranks().end()}; }

ScoreTable table_from(const std::optional<std::vector<std::vector<double>>>& rows) {
  return rows ? ScoreTable::from_rows(*rows) : ScoreTable::parametric();
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Rank recovery from sequentially biased scores";

  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  m.def("relative_ranks", [](const Ranks& p) {
    const auto rel = relative_ranks(Permutation(p));
    return std::vector<int>(rel.values().begin(), rel.values().end());
  }, py::arg("perm"));
  m.def("from_relative_ranks", [](const std::vector<int>& rel) {
    return to_list(from_relative_ranks(RelativeRankVector(rel)));
  }, py::arg("rel"));
  m.def("rho", [](const Ranks& p, std::size_t t, long long r) { return rho(Permutation(p), t, r); },
        py::arg("perm"), py::arg("t"), py::arg("r"));
  m.def("ranking_from_scores", [](const std::vector<double>& y) { return to_list(ranking_from_scores(y)); },
        py::arg("scores"));

  m.def("d_sf", [](const Ranks& a, const Ranks& b) { return d_sf(Permutation(a), Permutation(b)); });
  m.def("d_kt", [](const Ranks& a, const Ranks& b) { return d_kt(Permutation(a), Permutation(b)); });
  m.def("d_inv", [](const Ranks& a, const Ranks& b) { return d_inv(Permutation(a), Permutation(b)); });
  m.def("d_entrywise", [](const Ranks& a, const Ranks& b, std::size_t t) {
    return d_entrywise(Permutation(a), Permutation(b), t);
  }, py::arg("a"), py::arg("b"), py::arg("t"));

  m.def("parametric_score", &parametric_score, py::arg("t"), py::arg("r"));
  m.def("generate_scores", [](const Ranks& p, const std::string& noise, std::uint64_t seed,
                              const std::optional<std::vector<std::vector<double>>>& table) {
    const auto y = generate_scores(Permutation(p), table_from(table), NoiseSpec::parse(noise), seed);
    return std::vector<double>(y.values().begin(), y.values().end());
  }, py::arg("perm"), py::arg("noise") = "none", py::arg("seed") = 0, py::arg("table") = py::none());
  m.def("detect_conflicts", [](const Ranks& p, const std::optional<std::vector<std::vector<double>>>& table) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (const auto& c : detect_conflicts(table_from(table), Permutation(p))) out.emplace_back(c.i, c.j);
    return out;
  }, py::arg("perm"), py::arg("table") = py::none());
  m.def("exists_conflict_ranking", [](std::size_t n, const std::optional<std::vector<std::vector<double>>>& table) {
    return to_list(exists_conflict_ranking(table_from(table), n));
  }, py::arg("n"), py::arg("table") = py::none());
  m.def("adversarial_permutation", [](std::size_t n) { return to_list(adversarial_permutation(n)); }, py::arg("n"));
  m.def("exact_bayes_loss", [](std::size_t n, const std::optional<ResponseFn>& response) {
    return exact_bayes_loss(response ? *response : ResponseFn([](std::size_t t, int r) { return parametric_score(t, r); }), n);
  }, py::arg("n"), py::arg("response") = py::none());

  m.def("ls_estimate", [](const std::vector<double>& y, const std::optional<std::vector<std::vector<double>>>& table) {
    const auto res = ls_estimate(y, table_from(table));
    py::dict d;
    d["ranking"] = to_list(res.ranking);
    d["rhat"] = std::vector<int>(res.rhat.values().begin(), res.rhat.values().end());
    d["objective"] = res.objective;
    return d;
  }, py::arg("scores"), py::arg("table") = py::none());
  m.def("brute_force_ls", [](const std::vector<double>& y, const std::optional<std::vector<std::vector<double>>>& table) {
    const auto res = brute_force_ls(y, table_from(table));
    std::vector<Ranks> mins;
    for (const auto& p : res.minimizers) mins.push_back(to_list(p));
    return py::make_tuple(mins, res.objective);
  }, py::arg("scores"), py::arg("table") = py::none());
  m.def("sf_error_bound", [](const Ranks& p, double delta) { return sf_error_bound(Permutation(p), delta); },
        py::arg("truth"), py::arg("delta"));

  m.def("run_trial", [](std::size_t n, double delta, std::uint64_t seed, bool adversarial) {
    const auto rec = run_trial(n, delta, ScoreTable::parametric(), seed,
                               adversarial ? TruthSource::adversarial : TruthSource::uniform);
    py::dict d;
    d["d_sf_ls"] = rec.d_sf_ls;
    d["d_sf_induced"] = rec.d_sf_induced;
    d["d_kt_ls"] = rec.d_kt_ls;
    d["d_kt_induced"] = rec.d_kt_induced;
    d["entrywise_ls"] = rec.entrywise_ls;
    d["entrywise_induced"] = rec.entrywise_induced;
    return d;
  }, py::arg("n"), py::arg("delta"), py::arg("seed") = 0, py::arg("adversarial") = false);
  m.def("simulate", [](const std::string& sweep, std::vector<std::size_t> n_values, std::vector<double> deltas,
                       std::size_t trials, std::uint64_t seed, const std::string& out_dir) {
    ExperimentConfig cfg;
    cfg.sweep = parse_sweep_kind(sweep);
    cfg.n_values = std::move(n_values);
    cfg.deltas = std::move(deltas);
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.output_dir = out_dir;
    SweepResult result;
    {
      py::gil_scoped_release release;
      result = run_sweep(cfg);
    }
    const auto files = write_sweep(result, cfg.output_dir);
    py::dict d;
    d["trials"] = files.trials.string();
    d["aggregate"] = files.aggregate.string();
    if (!files.per_position.empty()) d["per_position"] = files.per_position.string();
    return d;
  }, py::arg("sweep"), py::arg("n_values"), py::arg("deltas"), py::arg("trials") = 1000, py::arg("seed") = 0,
     py::arg("out_dir") = ".");
}
