#include "coal/io.hpp"

#include <cstdio>
#include <fstream>
#include <unordered_set>

namespace coal {

std::string format_scalar(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

MarkovChain chain_from_json(const Json& j) {
    if (!j.contains("states") || !j.contains("transition"))
        throw std::runtime_error("chain JSON needs \"states\" and \"transition\"");
    std::vector<std::string> labels = j.at("states").get<std::vector<std::string>>();
    std::unordered_set<std::string> seen;
    for (const auto& l : labels)
        if (!seen.insert(l).second)
            throw std::runtime_error("duplicate state label: " + l);
    auto matrix = j.at("transition").get<std::vector<std::vector<double>>>();
    return validate_chain(matrix, labels);
}

MarkovChain load_chain(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Json j = Json::parse(in);
    return chain_from_json(j);
}

Json chain_to_json(const MarkovChain& chain) {
    Json j;
    j["states"] = chain.states();
    j["transition"] = chain.transition();
    return j;
}

Json nblock_to_json(const NBlockChain& nb) {
    Json j;
    std::vector<std::string> labels(nb.size());
    for (std::size_t u = 0; u < nb.size(); ++u) labels[u] = nb.label(u);
    j["states"] = labels;
    std::vector<std::vector<double>> p(nb.size(), std::vector<double>(nb.size(), 0.0));
    for (std::size_t u = 0; u < nb.size(); ++u)
        for (auto [v, prob] : nb.row(u)) p[u][v] = prob;
    j["transition"] = p;
    return j;
}

Json summary_to_json(const SpectralSummary& s) {
    Json j;
    j["lambda"] = s.lambda;
    j["L"] = s.L;
    j["entropy"] = s.entropy;
    j["is_mme"] = s.is_mme;
    j["mme_distance"] = s.mme_distance;
    return j;
}

}  // namespace coal
