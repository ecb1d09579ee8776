#include "straticoh/json_io.hpp"

#include <set>
#include <sstream>

namespace straticoh {

Json rational_to_json(const Rational& x) { return to_string(x); }

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(rational_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    Json out;
    out["rows"] = m.rows();
    out["cols"] = m.cols();
    out["entries"] = std::move(rows);
    return out;
}

ComplexHandle complex_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("simplices"))
        throw std::invalid_argument("complex: expected an object with a 'simplices' array");
    std::vector<Simplex> maximal;
    for (const auto& s : j.at("simplices")) {
        Simplex sx;
        for (const auto& v : s) sx.push_back(v.get<Vertex>());
        maximal.push_back(std::move(sx));
    }
    if (j.contains("vertices"))
        for (const auto& v : j.at("vertices")) maximal.push_back({v.get<Vertex>()});
    return SimplicialComplex::build(maximal);
}

Json complex_to_json(const SimplicialComplex& k) {
    Json out;
    out["vertices"] = k.vertices();
    Json simps = Json::array();
    for (const auto& s : k.maximal_simplices()) simps.push_back(s);
    out["simplices"] = std::move(simps);
    return out;
}

namespace {

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw std::invalid_argument("expected a rational (integer or 'p/q' string)");
}

}  // namespace

InnerProduct weights_from_json(const Json& j, const GradedComplex& c) {
    InnerProduct ip;
    for (auto it = j.begin(); it != j.end(); ++it) {
        int r = std::stoi(it.key());
        std::vector<Rational> w;
        for (const auto& x : it.value()) w.push_back(rational_from_json(x));
        ip.weights[r] = std::move(w);
    }
    for (int r = c.lo(); r <= c.hi(); ++r)
        if (!ip.weights.count(r)) ip.weights[r] = std::vector<Rational>(c.dim(r), Rational(1));
    ip.validate(c);
    return ip;
}

namespace {

std::pair<Vertex, Vertex> edge_key_from_string(const std::string& key) {
    // "[a,b]"
    if (key.size() < 5 || key.front() != '[' || key.back() != ']')
        throw std::invalid_argument("monodromy key must look like \"[a,b]\": " + key);
    std::string inner = key.substr(1, key.size() - 2);
    auto comma = inner.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("monodromy key must look like \"[a,b]\": " + key);
    Vertex a = std::stoll(inner.substr(0, comma));
    Vertex b = std::stoll(inner.substr(comma + 1));
    return {a, b};
}

}  // namespace

FlatBundleSystem bundle_from_json(const Json& j) {
    ComplexHandle base = complex_from_json(j.at("base"));
    ComplexHandle fiber = complex_from_json(j.at("fiber"));
    ComplexPtr fc = fiber->cochain_complex();
    InnerProduct ip = j.contains("fiber_weights") ? weights_from_json(j.at("fiber_weights"), *fc)
                                                  : InnerProduct::ones(*fc);
    std::map<std::pair<Vertex, Vertex>, SimplicialMap> mono;
    if (j.contains("monodromy")) {
        for (auto it = j.at("monodromy").begin(); it != j.at("monodromy").end(); ++it) {
            auto key = edge_key_from_string(it.key());
            std::map<Vertex, Vertex> vm;
            for (auto vit = it.value().begin(); vit != it.value().end(); ++vit)
                vm[std::stoll(vit.key())] = vit.value().get<Vertex>();
            mono.emplace(key, SimplicialMap(fiber, fiber, std::move(vm)));
        }
    }
    return build_system(std::move(base), std::move(fiber), std::move(ip), std::move(mono));
}

Perversity perversity_from_json(const Json& j, int n) {
    if (j.is_string()) return Perversity::preset(j.get<std::string>(), n);
    if (j.is_array()) {
        std::vector<int> vals;
        for (const auto& v : j) vals.push_back(v.get<int>());
        return Perversity(n, std::move(vals));
    }
    throw std::invalid_argument("perversity: expected a preset name or a value array");
}

SpaceInput space_from_json(const Json& j) {
    SpaceInput in;
    ComplexHandle mcx = complex_from_json(j.at("M"));
    std::optional<std::vector<int>> orientation;
    if (j.contains("orientation")) {
        std::vector<int> o;
        for (const auto& v : j.at("orientation")) o.push_back(v.get<int>());
        orientation = std::move(o);
    }
    OrientedPseudomanifold M = make_pseudomanifold(mcx, orientation);
    in.n = M.n;
    if (j.contains("perversity")) in.perversity_json = j.at("perversity");

    if (j.contains("bundle")) {
        in.depth1 = true;
        const Json& bj = j.at("bundle");
        FlatBundleSystem sys = bundle_from_json(bj);
        std::string realization = bj.at("realization").get<std::string>();
        RealizationKind kind;
        if (realization == "product")
            kind = RealizationKind::Product;
        else if (realization == "mapping_torus")
            kind = RealizationKind::MappingTorus;
        else
            throw std::invalid_argument("unknown realization '" + realization + "'");
        std::map<Vertex, Vertex> ident;
        for (auto it = bj.at("identification").begin(); it != bj.at("identification").end(); ++it)
            ident[std::stoll(it.key())] = it.value().get<Vertex>();
        in.depth_one = make_depth_one_space(std::move(M), std::move(sys), kind, std::move(ident));
        return in;
    }

    std::vector<ComplexHandle> links;
    if (j.contains("boundary_links")) {
        for (const auto& lj : j.at("boundary_links")) {
            if (lj.contains("vertex_subset")) {
                std::set<Vertex> verts;
                for (const auto& v : lj.at("vertex_subset")) verts.insert(v.get<Vertex>());
                std::vector<Simplex> simps;
                for (int r = 0; r <= M.boundary->dim(); ++r)
                    for (const auto& s : M.boundary->simplices(r)) {
                        bool inside = true;
                        for (Vertex v : s)
                            if (!verts.count(v)) { inside = false; break; }
                        if (inside) simps.push_back(s);
                    }
                links.push_back(SimplicialComplex::build(simps));
            } else {
                links.push_back(complex_from_json(lj));
            }
        }
    } else {
        links.push_back(M.boundary);
    }
    std::vector<InnerProduct> ips;
    if (j.contains("link_weights")) {
        size_t i = 0;
        for (const auto& wj : j.at("link_weights")) {
            if (i >= links.size()) throw std::invalid_argument("more link_weights than links");
            ips.push_back(weights_from_json(wj, *links[i]->cochain_complex()));
            ++i;
        }
    }
    in.isolated = make_isolated_space(std::move(M), std::move(links), std::move(ips));
    return in;
}

Json betti_to_json(const std::map<int, int>& betti) {
    Json out = Json::object();
    for (const auto& [r, b] : betti) out[std::to_string(r)] = b;
    return out;
}

namespace {

void render_value(const Json& v, const std::string& key, std::string& out, int indent);

void render_object(const Json& obj, std::string& out, int indent) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        render_value(it.value(), it.key(), out, indent);
}

void render_value(const Json& v, const std::string& key, std::string& out, int indent) {
    std::string pad(static_cast<size_t>(indent) * 2, ' ');
    if (v.is_object()) {
        out += pad + key + ":\n";
        render_object(v, out, indent + 1);
    } else if (v.is_array()) {
        bool scalar_only = true;
        for (const auto& x : v)
            if (x.is_object() || x.is_array()) scalar_only = false;
        if (scalar_only) {
            out += pad + key + ": ";
            for (size_t i = 0; i < v.size(); ++i) {
                if (i) out += " ";
                out += v[i].is_string() ? v[i].get<std::string>() : v[i].dump();
            }
            out += "\n";
        } else {
            out += pad + key + ":\n";
            for (size_t i = 0; i < v.size(); ++i)
                render_value(v[i], "- " + std::to_string(i), out, indent + 1);
        }
    } else {
        out += pad + key + ": " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
    }
}

}  // namespace

std::string render_table(const Json& report, int indent) {
    std::string out;
    render_object(report, out, indent);
    return out;
}

}  // namespace straticoh
