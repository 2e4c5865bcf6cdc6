#include "sgefem/quadrature.hpp"

#include "sgefem/errors.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace sgefem {

// defined in quadrature_tables.cpp (embedded copies of core/data/quadrature/)
const char* embedded_quadrature_table(int id);

QuadratureRule parse_quadrature(std::istream& in, const std::string& origin) {
    QuadratureRule rule;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        std::string comment;
        if (hash != std::string::npos) {
            comment = line.substr(hash + 1);
            line = line.substr(0, hash);
        }
        if (const auto pos = comment.find("degree:"); pos != std::string::npos) {
            rule.degree = std::stoi(comment.substr(pos + 7));
        }
        std::istringstream ls(line);
        double L1, L2, L3, w;
        if (!(ls >> L1)) continue;  // blank or comment-only line
        if (!(ls >> L2 >> L3 >> w)) {
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected 'L1 L2 L3 weight'");
        }
        rule.points.emplace_back(L1, L2, L3);
        rule.weights.push_back(w);
    }
    if (rule.points.empty()) {
        throw ConfigError(origin + ": no quadrature points found");
    }
    rule.id = static_cast<int>(rule.points.size());

    double wsum = 0.0, wneg = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
        const auto& L = rule.points[q];
        if (!L.allFinite() || !std::isfinite(rule.weights[q])) {
            throw ConfigError(origin + ": non-finite quadrature record");
        }
        if (std::abs(L.sum() - 1.0) > 1e-12) {
            throw ConfigError(origin + ": areal coordinates do not sum to 1");
        }
        if (L.minCoeff() < -1e-14 || L.maxCoeff() > 1.0 + 1e-14) {
            throw ConfigError(origin + ": quadrature point outside the triangle");
        }
        wsum += rule.weights[q];
        wneg += std::min(rule.weights[q], 0.0);
    }
    if (std::abs(wsum - 1.0) > 1e-12) {
        throw ConfigError(origin + ": weights sum to " + std::to_string(wsum) +
                          ", expected 1");
    }
    if (wneg < -0.15) {
        throw ConfigError(origin + ": negative-weight mass " + std::to_string(wneg) +
                          " exceeds the accepted bound");
    }
    return rule;
}

QuadratureRule load_quadrature_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open quadrature table: " + path);
    }
    return parse_quadrature(in, path);
}

const QuadratureRule& quadrature(int id) {
    static std::map<int, QuadratureRule> cache;
    auto it = cache.find(id);
    if (it != cache.end()) return it->second;
    const char* text = embedded_quadrature_table(id);
    if (text == nullptr) {
        throw ConfigError("unsupported quadrature rule id " + std::to_string(id) +
                          " (supported: 13, 25, 30, 37)");
    }
    std::istringstream in(text);
    auto rule = parse_quadrature(in, "builtin tri" + std::to_string(id));
    if (rule.id != id) {
        throw ConfigError("builtin quadrature table tri" + std::to_string(id) +
                          " holds " + std::to_string(rule.id) + " points");
    }
    it = cache.emplace(id, std::move(rule)).first;
    return it->second;
}

} // namespace sgefem
