// straticoh: batch computations on simplicial stratified spaces.
// Commands read JSON descriptions of complexes, bundles and spaces and emit
// machine-readable (json) or human-readable (table) reports.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "straticoh/fixtures.hpp"
#include "straticoh/selftest.hpp"

using namespace straticoh;

namespace {

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const std::exception& e) {
        throw std::invalid_argument("parse error in '" + path + "': " + e.what());
    }
}

Json fvector(const SimplicialComplex& k) {
    Json arr = Json::array();
    for (int r = 0; r <= k.dim(); ++r) arr.push_back(k.count(r));
    return arr;
}

Json report_header(const std::string& command) {
    Json rep;
    rep["schema_version"] = kSchemaVersion;
    rep["command"] = command;
    return rep;
}

Json pairing_verdicts_json(const std::vector<PairingVerdict>& verdicts) {
    Json arr = Json::array();
    for (const auto& v : verdicts) {
        Json j;
        j["degree"] = v.degree;
        j["matrix"] = matrix_to_json(v.matrix);
        j["rank"] = rank(v.matrix);
        j["square"] = v.square;
        j["nondegenerate"] = v.nondegenerate;
        arr.push_back(std::move(j));
    }
    return arr;
}

Perversity resolve_perversity(const std::string& cli_opt, const SpaceInput& in) {
    if (!cli_opt.empty()) {
        if (cli_opt.find(',') == std::string::npos && !isdigit(cli_opt[0]))
            return Perversity::preset(cli_opt, in.n);
        std::vector<int> vals;
        std::string cur;
        for (char ch : cli_opt + ",") {
            if (ch == ',') {
                vals.push_back(std::stoi(cur));
                cur.clear();
            } else {
                cur += ch;
            }
        }
        return Perversity(in.n, std::move(vals));
    }
    if (in.perversity_json) return perversity_from_json(*in.perversity_json, in.n);
    return Perversity::lower_middle(in.n);
}

Json space_summary(const SpaceInput& in, const Perversity& p) {
    Json s;
    if (in.depth1) {
        const auto& sp = *in.depth_one;
        s["kind"] = "depth1";
        s["M_f_vector"] = fvector(*sp.exterior.complex);
        s["base_f_vector"] = fvector(*sp.bundle.base);
        s["fiber_f_vector"] = fvector(*sp.bundle.fiber);
        int m = sp.bundle.fiber->dim();
        s["n"] = sp.exterior.n;
        if (m >= 1) {
            Cutoffs c = cutoffs(p, sp.exterior.n, m);
            s["cutoffs"] = Json{{"K", c.K}, {"K_star", c.Kstar}};
        } else {
            s["cutoffs"] = Json{{"K", 0}};
        }
    } else {
        const auto& sp = *in.isolated;
        s["kind"] = "isolated";
        s["M_f_vector"] = fvector(*sp.exterior.complex);
        Json links = Json::array();
        for (const auto& l : sp.links) links.push_back(fvector(*l));
        s["link_f_vectors"] = std::move(links);
        s["n"] = sp.exterior.n;
        s["cutoffs"] = Json{{"c", cutoffs(p, sp.exterior.n, sp.exterior.n - 1).c}};
    }
    s["perversity"] = p.values();
    return s;
}

void emit(const Json& rep, const std::string& format, const std::string& output) {
    std::string text = format == "table" ? render_table(rep) : rep.dump(2) + "\n";
    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output);
        if (!out) throw std::invalid_argument("cannot open output file '" + output + "'");
        out << text;
    }
}

int lower_middle_K(int m) { return m - (m + 1 >= 2 ? (m - 1) / 2 : 0); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact cohomology of depth-1 stratified pseudomanifolds"};
    app.require_subcommand(1);

    std::string perversity_opt, perversity_q_opt, format = "json", output;
    int cutoff = -1;
    app.add_option("--perversity", perversity_opt,
                   "perversity preset (zero | lower-middle | upper-middle | top) or p(2..n) "
                   "as a comma list");
    app.add_option("--perversity-q", perversity_q_opt,
                   "second perversity for pairing (default: the complement)");
    app.add_option("--format", format, "output format: json | table")
        ->check(CLI::IsMember({"json", "table"}));
    app.add_option("--output", output, "write the report to this path");
    app.add_option("--cutoff", cutoff, "fiberwise cutoff K (duality-check)");

    std::vector<std::string> files;
    auto add_cmd = [&](const std::string& name, const std::string& desc) {
        CLI::App* c = app.add_subcommand(name, desc);
        c->add_option("files", files, "input files");
        c->fallthrough();
        return c;
    };
    add_cmd("cohomology", "betti numbers of a simplicial complex");
    add_cmd("hi", "HI groups of an isolated-singularity space");
    add_cmd("hi-depth1", "HI groups of a depth-1 flat-bundle space");
    add_cmd("pairing", "HI duality pairing matrices and rank verdicts");
    add_cmd("cup", "cup products of HI representative classes");
    add_cmd("e2", "E2 page of a flat bundle system");
    add_cmd("collapse-check", "E2 collapse verification");
    add_cmd("duality-check", "global duality rank verification for a bundle");
    add_cmd("derham-check", "HI vs intersection-space homology rank check");
    add_cmd("selftest", "run every module invariant suite on built-in fixtures");

    CLI11_PARSE(app, argc, argv);
    std::string command = app.get_subcommands().front()->get_name();

    try {
        if (const char* t = std::getenv("STRATICOH_THREADS")) set_parallelism(std::stoi(t));
    } catch (const std::exception&) {
        std::cerr << "error: STRATICOH_THREADS must be a positive integer\n";
        return 2;
    }

    try {
        Json rep = report_header(command);
        bool checks_ok = true;

        if (command == "selftest") {
            SelfTestReport st = run_selftest();
            rep = st.to_json();
            checks_ok = st.failed() == 0;
        } else if (command == "cohomology") {
            if (files.size() != 1) throw std::invalid_argument("cohomology needs one complex file");
            ComplexHandle k = complex_from_json(load_json(files[0]));
            rep["input"] = Json{{"f_vector", fvector(*k)}};
            rep["betti"] = betti_to_json(betti_table(k->cochain_complex()));
        } else if (command == "e2" || command == "collapse-check" || command == "duality-check") {
            if (files.size() != 1) throw std::invalid_argument(command + " needs one bundle file");
            FlatBundleSystem sys = bundle_from_json(load_json(files[0]));
            rep["input"] = Json{{"base_f_vector", fvector(*sys.base)},
                                {"fiber_f_vector", fvector(*sys.fiber)}};
            if (command == "e2" || command == "collapse-check") {
                E2Table e2 = e2_page(sys);
                Json table = Json::object();
                for (const auto& [pq, d] : e2.dims)
                    table["(" + std::to_string(pq.first) + "," + std::to_string(pq.second) + ")"] =
                        d;
                rep["e2"] = std::move(table);
                if (command == "collapse-check") {
                    CollapseReport cr = collapse_check(sys);
                    Json rows = Json::array();
                    for (const auto& [r, tot, sum] : cr.rows)
                        rows.push_back(Json{{"degree", r}, {"total", tot}, {"e2_sum", sum}});
                    rep["collapse"] = std::move(rows);
                    rep["collapses"] = cr.collapses;
                    checks_ok = cr.collapses;
                }
            } else {
                int m = sys.fiber->dim();
                int K = cutoff >= 0 ? cutoff : lower_middle_K(m);
                GlobalDualityReport gr = global_duality_rank_check(sys, K, m + 1 - K);
                Json rows = Json::array();
                for (const auto& [r, a, b] : gr.rows)
                    rows.push_back(Json{{"degree", r}, {"below", a}, {"dual_at_or_above", b}});
                rep["input"]["K"] = K;
                rep["input"]["K_star"] = m + 1 - K;
                rep["ranks"] = std::move(rows);
                rep["all_equal"] = gr.all_equal;
                checks_ok = gr.all_equal;
            }
        } else {
            if (files.size() != 1) throw std::invalid_argument(command + " needs one space file");
            SpaceInput in = space_from_json(load_json(files[0]));
            Perversity p = resolve_perversity(perversity_opt, in);
            rep["input"] = space_summary(in, p);

            if (command == "hi") {
                if (in.depth1)
                    throw std::invalid_argument("hi expects an isolated-singularity space "
                                                "(use hi-depth1 for bundle boundaries)");
                HIResult hi = hi_groups(*in.isolated, p);
                rep["hi_betti"] = betti_to_json(hi.betti);
                // hi_groups verifies both defining long exact sequences
                rep["les_exact"] = true;
            } else if (command == "hi-depth1") {
                if (!in.depth1)
                    throw std::invalid_argument("hi-depth1 expects a space with a bundle");
                HIResult hi = hi_groups_depth1(*in.depth_one, p);
                rep["hi_betti"] = betti_to_json(hi.betti);
            } else if (command == "pairing") {
                if (in.depth1)
                    throw std::invalid_argument("pairing supports isolated-singularity spaces");
                Perversity q = perversity_q_opt.empty()
                                   ? p.complement()
                                   : resolve_perversity(perversity_q_opt, in);
                HiPairingReport pr = hi_pairing(*in.isolated, p, q);
                rep["pairing"] = pairing_verdicts_json(pr.by_degree);
                rep["all_nondegenerate"] = pr.all_nondegenerate;
                checks_ok = pr.all_nondegenerate;
            } else if (command == "cup") {
                if (in.depth1)
                    throw std::invalid_argument("cup supports isolated-singularity spaces");
                HIResult hi = hi_groups(*in.isolated, p);
                Json products = Json::array();
                for (const auto& [r1, b1] : hi.betti)
                    for (const auto& [r2, b2] : hi.betti) {
                        if (b1 == 0 || b2 == 0 || r1 + r2 > in.n) continue;
                        for (int i = 0; i < b1; ++i)
                            for (int j = 0; j < b2; ++j) {
                                HiClass a{r1, std::vector<Rational>(b1, Rational(0))};
                                HiClass b{r2, std::vector<Rational>(b2, Rational(0))};
                                a.coords[i] = 1;
                                b.coords[j] = 1;
                                HiClass ab = hi_cup(*in.isolated, p, a, b);
                                Json coords = Json::array();
                                for (const auto& x : ab.coords)
                                    coords.push_back(rational_to_json(x));
                                products.push_back(Json{{"degrees", Json::array({r1, r2})},
                                                        {"factors", Json::array({i, j})},
                                                        {"coordinates", std::move(coords)}});
                            }
                    }
                rep["cup_products"] = std::move(products);
            } else if (command == "derham-check") {
                if (in.depth1)
                    throw std::invalid_argument("derham-check supports isolated-singularity "
                                                "spaces");
                DeRhamReport dr = derham_crosscheck(*in.isolated, p);
                Json rows = Json::array();
                for (const auto& [r, hi, cone] : dr.rows)
                    rows.push_back(
                        Json{{"degree", r}, {"hi", hi}, {"intersection_space_homology", cone}});
                rep["ranks"] = std::move(rows);
                rep["equal"] = dr.equal;
                rep["link_h1_warning"] = dr.link_h1_warning;
                checks_ok = dr.equal;
            }
        }

        emit(rep, format, output);
        return checks_ok ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
