#include "spmvsel/model.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <fmt/core.h>
#include <json.hpp>

#include "spmvsel/error.hpp"

namespace spmvsel {
namespace {

using nlohmann::json;

MatrixClass class_from_json(const json& j) {
  const auto c = parse_class(j.get<std::string>());
  if (!c) throw ModelError("unknown class label '" + j.get<std::string>() + "'");
  return *c;
}

json tree_to_json(const DecisionTree& t) {
  json nodes = json::array();
  for (const TreeNode& n : t.nodes) {
    json node = {{"counts", n.counts}, {"prediction", class_name(n.prediction)}};
    if (!n.is_leaf()) {
      node["feature"] = n.feature;
      node["threshold"] = n.threshold;
      node["left"] = n.left;
      node["right"] = n.right;
    }
    nodes.push_back(std::move(node));
  }
  return {{"n_features", t.n_features}, {"nodes", std::move(nodes)}};
}

DecisionTree tree_from_json(const json& j) {
  DecisionTree t;
  t.n_features = j.at("n_features").get<std::size_t>();
  for (const json& node : j.at("nodes")) {
    TreeNode n;
    n.counts = node.at("counts").get<ClassCounts>();
    n.prediction = class_from_json(node.at("prediction"));
    if (node.contains("feature")) {
      n.feature = node.at("feature").get<int>();
      n.threshold = node.at("threshold").get<double>();
      n.left = node.at("left").get<std::size_t>();
      n.right = node.at("right").get<std::size_t>();
    }
    t.nodes.push_back(n);
  }
  if (t.nodes.empty()) throw ModelError("decision tree has no nodes");
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    const TreeNode& n = t.nodes[i];
    if (n.is_leaf()) continue;
    if (static_cast<std::size_t>(n.feature) >= t.n_features || n.left <= i || n.right <= i ||
        n.left >= t.nodes.size() || n.right >= t.nodes.size()) {
      throw ModelError(fmt::format("decision tree node {} is inconsistent", i));
    }
  }
  return t;
}

json gnb_to_json(const GaussianNB& m) {
  json classes = json::array();
  for (MatrixClass c : kAllClasses) {
    const std::size_t k = class_index(c);
    classes.push_back({{"label", class_name(c)},
                       {"count", m.counts[k]},
                       {"prior", m.priors[k]},
                       {"mean", m.means[k]},
                       {"variance", m.variances[k]}});
  }
  return {{"n_features", m.n_features}, {"smoothing", m.smoothing}, {"classes", classes}};
}

GaussianNB gnb_from_json(const json& j) {
  GaussianNB m;
  m.n_features = j.at("n_features").get<std::size_t>();
  m.smoothing = j.at("smoothing").get<double>();
  for (const json& cj : j.at("classes")) {
    const std::size_t k = class_index(class_from_json(cj.at("label")));
    m.counts[k] = cj.at("count").get<std::size_t>();
    m.priors[k] = cj.at("prior").get<double>();
    m.means[k] = cj.at("mean").get<std::vector<double>>();
    m.variances[k] = cj.at("variance").get<std::vector<double>>();
  }
  for (std::size_t k = 0; k < kNumClasses; ++k) {
    if (m.means[k].size() != m.n_features || m.variances[k].size() != m.n_features) {
      throw ModelError("naive Bayes parameters do not match n_features");
    }
    for (double v : m.variances[k]) {
      if (!(v > 0.0)) throw ModelError("naive Bayes variances must be positive");
    }
  }
  return m;
}

}  // namespace

std::string_view model_kind_name(ModelKind k) {
  return k == ModelKind::kTree ? "tree" : "nb";
}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "tree") return ModelKind::kTree;
  if (name == "nb") return ModelKind::kNaiveBayes;
  throw InvalidArgument(fmt::format("unknown classifier '{}' (expected tree or nb)", name));
}

MatrixClass TrainedModel::predict(std::span<const double> x) const {
  return std::visit(
      [&](const auto& p) {
        if constexpr (std::is_same_v<std::decay_t<decltype(p)>, DecisionTree>) {
          return predict_tree(p, x);
        } else {
          return predict_gnb(p, x);
        }
      },
      parameters);
}

MatrixClass TrainedModel::predict(const FeatureVector& fv) const {
  return predict(select_features(fv, feature_names));
}

TrainedModel train_model(const Dataset& d, ModelKind kind, const TrainOptions& opts) {
  TrainedModel m;
  m.feature_names = d.feature_names;
  if (kind == ModelKind::kTree) {
    m.parameters = train_cart(d, opts.cart);
  } else {
    m.parameters = train_gnb(d, opts.gnb_epsilon);
  }
  return m;
}

void save_model(const TrainedModel& m, std::ostream& out) {
  json doc;
  doc["format_version"] = m.format_version;
  doc["kind"] = model_kind_name(m.kind());
  doc["feature_names"] = m.feature_names;
  doc["parameters"] = m.kind() == ModelKind::kTree
                          ? tree_to_json(std::get<DecisionTree>(m.parameters))
                          : gnb_to_json(std::get<GaussianNB>(m.parameters));
  out << doc.dump(2) << '\n';
}

void save_model(const TrainedModel& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  save_model(m, out);
}

TrainedModel load_model(std::istream& in) {
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ModelError(std::string("malformed model document: ") + e.what());
  }
  try {
    TrainedModel m;
    m.format_version = doc.at("format_version").get<int>();
    if (m.format_version != kModelFormatVersion) {
      throw ModelError(fmt::format("unsupported model format_version {} (expected {})",
                                   m.format_version, kModelFormatVersion));
    }
    m.feature_names = doc.at("feature_names").get<std::vector<std::string>>();
    for (const std::string& name : m.feature_names) feature_index(name);
    const ModelKind kind = parse_model_kind(doc.at("kind").get<std::string>());
    std::size_t n_features = 0;
    if (kind == ModelKind::kTree) {
      auto tree = tree_from_json(doc.at("parameters"));
      n_features = tree.n_features;
      m.parameters = std::move(tree);
    } else {
      auto gnb = gnb_from_json(doc.at("parameters"));
      n_features = gnb.n_features;
      m.parameters = std::move(gnb);
    }
    if (n_features != m.feature_names.size()) {
      throw ModelError("model feature_names do not match its parameters");
    }
    return m;
  } catch (const json::exception& e) {
    throw ModelError(std::string("malformed model document: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ModelError(e.what());
  }
}

TrainedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file " + path.string());
  return load_model(in);
}

}  // namespace spmvsel
