#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <sstream>

#include "spmvsel/advisor.hpp"
#include "spmvsel/error.hpp"
#include "spmvsel/generate.hpp"
#include "spmvsel/matrix_market.hpp"
#include "spmvsel/partition.hpp"
#include "spmvsel/spmv.hpp"
#include "spmvsel/worker_pool.hpp"

namespace py = pybind11;
using namespace spmvsel;

namespace {

py::dict features_dict(const FeatureVector& fv) {
  py::dict d;
  const auto values = fv.as_array();
  for (std::size_t k = 0; k < values.size(); ++k) d[py::str(std::string(feature_names()[k]))] = values[k];
  return d;
}

py::dict report_dict(const BenchmarkReport& r) {
  py::dict d;
  d["t_baseline"] = r.t_baseline;
  d["t_noxmiss"] = r.t_noxmiss;
  d["t_inflate"] = r.t_inflate;
  d["t_balance_mean"] = r.t_balance_mean;
  d["s_cml"] = r.s_cml;
  d["s_mb"] = r.s_mb;
  d["s_imb"] = r.s_imb;
  return d;
}

MatrixClass class_from(const std::string& name) {
  const auto c = parse_class(name);
  if (!c) throw InvalidArgument("unknown class: " + name);
  return *c;
}

AdvisorConfig make_config(std::optional<std::filesystem::path> config, std::optional<std::size_t> workers,
                          std::optional<std::size_t> reps, std::optional<std::size_t> warmup,
                          std::optional<std::size_t> llc_bytes,
                          std::optional<std::size_t> cacheline_bytes) {
  AdvisorConfig cfg = config ? load_config(*config) : AdvisorConfig::defaults();
  if (workers) cfg.workers = *workers;
  if (reps) cfg.reps = *reps;
  if (warmup) cfg.warmup = *warmup;
  if (llc_bytes) cfg.llc_bytes = *llc_bytes;
  if (cacheline_bytes) cfg.cacheline_bytes = *cacheline_bytes;
  cfg.validate();
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_spmvsel, m) {
  m.doc() = "SpMV bottleneck classification and optimization advice";

  // Translators run most recent first, so the base class goes first.
  auto& base_error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<UsageError>(m, "UsageError", base_error);

  py::class_<AdvisorConfig>(m, "AdvisorConfig")
      .def(py::init([](std::optional<std::filesystem::path> config, std::optional<std::size_t> workers,
                       std::optional<std::size_t> reps, std::optional<std::size_t> warmup,
                       std::optional<std::size_t> llc_bytes, std::optional<std::size_t> cacheline_bytes) {
             return make_config(config, workers, reps, warmup, llc_bytes, cacheline_bytes);
           }),
           py::arg("config") = py::none(), py::arg("workers") = py::none(), py::arg("reps") = py::none(),
           py::arg("warmup") = py::none(), py::arg("llc_bytes") = py::none(),
           py::arg("cacheline_bytes") = py::none())
      .def_readwrite("llc_bytes", &AdvisorConfig::llc_bytes)
      .def_readwrite("cacheline_bytes", &AdvisorConfig::cacheline_bytes)
      .def_readwrite("workers", &AdvisorConfig::workers)
      .def_readwrite("reps", &AdvisorConfig::reps)
      .def_readwrite("warmup", &AdvisorConfig::warmup)
      .def_readwrite("feature_subset", &AdvisorConfig::feature_subset)
      .def_property(
          "thresholds",
          [](const AdvisorConfig& c) { return std::make_tuple(c.thresholds.cml, c.thresholds.mb, c.thresholds.imb); },
          [](AdvisorConfig& c, std::tuple<double, double, double> t) {
            c.thresholds = {std::get<0>(t), std::get<1>(t), std::get<2>(t)};
          })
      .def("validate", &AdvisorConfig::validate);

  py::class_<CsrMatrix>(m, "CsrMatrix")
      .def(py::init<std::size_t, std::size_t, std::vector<std::uint32_t>, std::vector<std::uint32_t>,
                    std::vector<double>>(),
           py::arg("nrows"), py::arg("ncols"), py::arg("rowptr"), py::arg("colind"), py::arg("values"))
      .def_static(
          "from_triplets",
          [](std::size_t nrows, std::size_t ncols, const std::vector<std::tuple<std::size_t, std::size_t, double>>& e) {
            TripletList t{nrows, ncols, {}};
            for (const auto& [r, c, v] : e) t.entries.push_back({r, c, v});
            return csr_from_triplets(t);
          },
          py::arg("nrows"), py::arg("ncols"), py::arg("entries"))
      .def_property_readonly("nrows", &CsrMatrix::nrows)
      .def_property_readonly("ncols", &CsrMatrix::ncols)
      .def_property_readonly("nnz", &CsrMatrix::nnz)
      .def_property_readonly("rowptr", [](const CsrMatrix& a) {
        return std::vector<std::uint32_t>(a.rowptr().begin(), a.rowptr().end());
      })
      .def_property_readonly("colind", [](const CsrMatrix& a) {
        return std::vector<std::uint32_t>(a.colind().begin(), a.colind().end());
      })
      .def_property_readonly("values", [](const CsrMatrix& a) {
        return std::vector<double>(a.values().begin(), a.values().end());
      })
      .def("to_matrix_market", [](const CsrMatrix& a) {
        std::ostringstream out;
        write_matrix_market(out, a);
        return out.str();
      })
      .def("__repr__", [](const CsrMatrix& a) {
        return "CsrMatrix(" + std::to_string(a.nrows()) + "x" + std::to_string(a.ncols()) +
               ", nnz=" + std::to_string(a.nnz()) + ")";
      });

  m.def("load_matrix", [](const std::filesystem::path& p) { return load_csr(p); }, py::arg("path"),
        "Read a Matrix Market file into CSR.");
  m.def(
      "parse_matrix",
      [](const std::string& text) {
        std::istringstream in(text);
        return csr_from_triplets(parse_matrix_market(in));
      },
      py::arg("text"), "Parse Matrix Market text into CSR.");

  m.def(
      "spmv",
      [](const CsrMatrix& a, const std::vector<double>& x, std::size_t workers) {
        WorkerPool pool(workers);
        py::gil_scoped_release release;
        return spmv_baseline(a, x, partition_rows_by_nnz(a, workers), pool);
      },
      py::arg("a"), py::arg("x"), py::arg("workers") = 1, "y = A x with the baseline kernel.");

  m.def("feature_names", [] {
    std::vector<std::string> out;
    for (auto n : feature_names()) out.emplace_back(n);
    return out;
  });
  m.def("feature_subset", &feature_subset_preset, py::arg("name"));
  m.def(
      "extract_features",
      [](const CsrMatrix& a, std::size_t llc_bytes, std::size_t cacheline_bytes) {
        CacheConfig cfg;
        cfg.llc_bytes = llc_bytes;
        cfg.cacheline_bytes = cacheline_bytes;
        return features_dict(extract_features(a, cfg));
      },
      py::arg("a"), py::arg("llc_bytes") = CacheConfig{}.llc_bytes,
      py::arg("cacheline_bytes") = CacheConfig{}.cacheline_bytes);

  py::class_<TrainedModel>(m, "Model")
      .def_property_readonly("kind", [](const TrainedModel& t) { return std::string(model_kind_name(t.kind())); })
      .def_readonly("feature_names", &TrainedModel::feature_names)
      .def("predict", [](const TrainedModel& t, const std::vector<double>& x) {
        return std::string(class_name(t.predict(x)));
      })
      .def("save", [](const TrainedModel& t, const std::filesystem::path& p) { save_model(t, p); })
      .def("to_json", [](const TrainedModel& t) {
        std::ostringstream out;
        save_model(t, out);
        return out.str();
      });
  m.def("load_model", [](const std::filesystem::path& p) { return load_model(p); }, py::arg("path"));

  m.def(
      "train_model",
      [](const std::vector<std::vector<double>>& x, const std::vector<std::string>& labels,
         const std::vector<std::string>& names, const std::string& kind) {
        if (x.size() != labels.size()) throw DimensionError("features and labels differ in length");
        Dataset d{names, {}};
        for (std::size_t i = 0; i < x.size(); ++i) d.samples.push_back({x[i], class_from(labels[i])});
        return train_model(d, parse_model_kind(kind));
      },
      py::arg("features"), py::arg("labels"), py::arg("feature_names"), py::arg("kind") = "tree");

  m.def(
      "loo_accuracy",
      [](const std::vector<std::vector<double>>& x, const std::vector<std::string>& labels,
         const std::vector<std::string>& names, const std::string& kind) {
        if (x.size() != labels.size()) throw DimensionError("features and labels differ in length");
        Dataset d{names, {}};
        for (std::size_t i = 0; i < x.size(); ++i) d.samples.push_back({x[i], class_from(labels[i])});
        return loo_cv(d, model_trainer(parse_model_kind(kind))).accuracy;
      },
      py::arg("features"), py::arg("labels"), py::arg("feature_names"), py::arg("kind") = "tree");

  m.def(
      "advise",
      [](const CsrMatrix& a, const std::string& mode, const TrainedModel* model,
         std::optional<AdvisorConfig> config) {
        const AdvisorConfig cfg = config ? *config : AdvisorConfig::defaults();
        SteadyTimer timer;
        AdviceReport r;
        {
          py::gil_scoped_release release;
          r = advise(a, parse_advise_mode(mode), model, cfg, timer);
        }
        py::dict d;
        d["class"] = std::string(class_name(r.matrix_class));
        d["optimization"] = std::string(optimization_description(r.optimization));
        d["variant"] = std::string(optimization_variant(r.optimization));
        d["benchmark"] = r.benchmark ? py::object(report_dict(*r.benchmark)) : py::none();
        d["features"] = r.features ? py::object(features_dict(*r.features)) : py::none();
        return d;
      },
      py::arg("a"), py::arg("mode") = "profiling", py::arg("model") = nullptr,
      py::arg("config") = py::none());

  m.def(
      "generate",
      [](const std::string& kind, std::size_t n, std::size_t nnz_per_row, std::uint64_t seed,
         std::size_t llc_bytes) {
        const auto k = parse_matrix_kind(kind);
        if (!k) throw InvalidArgument("unknown matrix kind: " + kind);
        return generate_matrix({*k, n, nnz_per_row, seed, llc_bytes});
      },
      py::arg("kind"), py::arg("n"), py::arg("nnz_per_row"), py::arg("seed") = 0,
      py::arg("llc_bytes") = 0);

  m.def(
      "speedup_stats",
      [](const std::vector<double>& v) {
        const SpeedupStats s = speedup_stats(v);
        py::dict d;
        d["min"] = s.min;
        d["q1"] = s.q1;
        d["mean"] = s.mean;
        d["q3"] = s.q3;
        d["max"] = s.max;
        return d;
      },
      py::arg("values"));
}
