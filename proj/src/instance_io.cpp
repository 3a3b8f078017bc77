#include "osc/instance_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace osc {

std::string to_json_string(const IsingInstance& instance) {
    nlohmann::ordered_json doc;
    doc["n"] = instance.size();
    auto edges = nlohmann::ordered_json::array();
    for (const Edge& e : instance.edges()) edges.push_back({e.i, e.j, e.w});
    doc["edges"] = std::move(edges);
    auto fields = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < instance.fields().size(); ++i) fields.push_back(instance.fields()(i));
    doc["fields"] = std::move(fields);
    nlohmann::ordered_json meta;
    meta["model"] = instance.meta().model;
    meta["params"] = nlohmann::ordered_json::parse(instance.meta().params.dump());
    meta["seed"] = instance.meta().seed;
    doc["meta"] = std::move(meta);
    return doc.dump() + "\n";
}

IsingInstance from_json_string(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("instance is not valid JSON: ") + e.what());
    }
    try {
        const int n = doc.at("n").get<int>();
        std::vector<Edge> edges;
        for (const auto& row : doc.at("edges")) {
            if (!row.is_array() || row.size() != 3) throw std::invalid_argument("edge rows must be [i, j, w]");
            edges.push_back({row[0].get<int>(), row[1].get<int>(), row[2].get<double>()});
        }
        Vector fields = Vector::Zero(n);
        if (doc.contains("fields")) {
            const auto& f = doc.at("fields");
            if (static_cast<int>(f.size()) != n) throw std::invalid_argument("fields length differs from n");
            for (int i = 0; i < n; ++i) fields(i) = f[static_cast<std::size_t>(i)].get<double>();
        }
        InstanceMeta meta;
        if (doc.contains("meta")) {
            const auto& m = doc.at("meta");
            meta.model = m.value("model", std::string("custom"));
            meta.params = m.value("params", nlohmann::json::object());
            meta.seed = m.value("seed", std::uint64_t{0});
        }
        return IsingInstance(n, std::move(edges), std::move(fields), std::move(meta));
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed instance document: ") + e.what());
    }
}

void save_instance(const IsingInstance& instance, const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << to_json_string(instance);
}

IsingInstance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return from_json_string(buffer.str());
}

}  // namespace osc
