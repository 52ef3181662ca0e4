#include <json.hpp>

#include "backline/errors.hpp"
#include "backline/ml.hpp"

namespace backline {

namespace {

using json = nlohmann::json;

json tree_to_json(const Tree& tree) {
    json feature = json::array(), threshold = json::array(), left = json::array(),
         right = json::array(), value = json::array();
    for (const auto& n : tree.nodes) {
        feature.push_back(n.feature);
        threshold.push_back(n.threshold);
        left.push_back(n.left);
        right.push_back(n.right);
        value.push_back(n.value);
    }
    return json{{"feature", std::move(feature)},
                {"threshold", std::move(threshold)},
                {"left", std::move(left)},
                {"right", std::move(right)},
                {"value", std::move(value)}};
}

Tree tree_from_json(const json& j) {
    Tree tree;
    const auto& feature = j.at("feature");
    const auto& threshold = j.at("threshold");
    const auto& left = j.at("left");
    const auto& right = j.at("right");
    const auto& value = j.at("value");
    const std::size_t n = feature.size();
    if (threshold.size() != n || left.size() != n || right.size() != n || value.size() != n) {
        throw ValidationError("model: tree arrays must have equal length");
    }
    tree.nodes.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        tree.nodes[i] = {feature[i].get<int>(), threshold[i].get<double>(), left[i].get<int>(),
                         right[i].get<int>(), value[i].get<double>()};
        const TreeNode& node = tree.nodes[i];
        if (node.feature >= static_cast<int>(kFeatureCount)) {
            throw ValidationError("model: feature index out of range");
        }
        if (node.feature >= 0 &&
            (node.left < 0 || node.right < 0 || node.left >= static_cast<int>(n) ||
             node.right >= static_cast<int>(n))) {
            throw ValidationError("model: child index out of range");
        }
    }
    return tree;
}

json gain_to_json(const FeatureArray& gain) {
    json out = json::array();
    for (double g : gain) out.push_back(g);
    return out;
}

FeatureArray gain_from_json(const json& j) {
    if (!j.is_array() || j.size() != kFeatureCount) {
        throw ValidationError("model: gain must have one entry per feature");
    }
    FeatureArray gain{};
    for (std::size_t i = 0; i < kFeatureCount; ++i) gain[i] = j[i].get<double>();
    return gain;
}

}  // namespace

std::string model_to_json(const Model& model) {
    json trees = json::array();
    json j;
    if (const auto* gbdt = dynamic_cast<const GbdtModel*>(&model)) {
        for (const auto& t : gbdt->trees) trees.push_back(tree_to_json(t));
        j = json{{"algorithm", "gbdt"},
                 {"base_score", gbdt->base_score},
                 {"learning_rate", gbdt->learning_rate},
                 {"gain", gain_to_json(gbdt->gain)},
                 {"trees", std::move(trees)}};
    } else if (const auto* forest = dynamic_cast<const ForestModel*>(&model)) {
        for (const auto& t : forest->trees) trees.push_back(tree_to_json(t));
        j = json{{"algorithm", "random_forest"},
                 {"gain", gain_to_json(forest->gain)},
                 {"trees", std::move(trees)}};
    } else {
        throw ValidationError("model_to_json: unknown model type");
    }
    return j.dump();
}

std::unique_ptr<Model> model_from_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw ValidationError("model: invalid JSON");
    const std::string algorithm = j.at("algorithm").get<std::string>();

    if (algorithm == "gbdt") {
        auto model = std::make_unique<GbdtModel>();
        model->base_score = j.at("base_score").get<double>();
        model->learning_rate = j.at("learning_rate").get<double>();
        model->gain = gain_from_json(j.at("gain"));
        for (const auto& t : j.at("trees")) model->trees.push_back(tree_from_json(t));
        return model;
    }
    if (algorithm == "random_forest") {
        auto model = std::make_unique<ForestModel>();
        model->gain = gain_from_json(j.at("gain"));
        for (const auto& t : j.at("trees")) model->trees.push_back(tree_from_json(t));
        return model;
    }
    throw ValidationError("model: unknown algorithm " + algorithm);
}

}  // namespace backline
