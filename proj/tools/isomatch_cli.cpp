#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isomatch/decider.hpp"
#include "isomatch/draw.hpp"
#include "isomatch/generate.hpp"
#include "isomatch/normalize.hpp"
#include "isomatch/oracle.hpp"
#include "isomatch/psg.hpp"
#include "isomatch/weights.hpp"

namespace {

using namespace isomatch;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text;
}

void parse_cross_specs(const std::vector<std::string>& specs, std::map<int, std::vector<Crossing>>& by_edge) {
    for (const std::string& s : specs) {
        std::istringstream in(s);
        std::string e, p, d;
        if (!std::getline(in, e, ':') || !std::getline(in, p, ':') || !std::getline(in, d))
            throw CLI::ValidationError("--cross needs edge:pair:u|p, got '" + s + "'");
        if (d != "u" && d != "p") throw CLI::ValidationError("--cross direction must be u or p");
        by_edge[std::stoi(e)].push_back({std::stoi(p), d == "u"});
    }
}

std::string table(const WeightFunction& w) {
    std::ostringstream out;
    out << "table " << w.name << "\n";
    for (std::size_t i = 1; i < w.val.size(); ++i) out << i << " " << w.val[i].get_str() << "\n";
    return out.str();
}

struct VerifyLine {
    std::string check;
    std::string verdict;  // PASS / FAIL / SKIP
    std::string note;
};

std::string witness_text(const EmbeddedGraph& g, const Matching& m1, const Matching& m2,
                         const SymDiffDecomposition& d) {
    std::ostringstream out;
    auto write_matching = [&](const char* name, const Matching& m) {
        out << name;
        for (EdgeId e : m.edges) out << " " << e;
        out << " # sig " << m.sig.str() << "\n";
    };
    write_matching("matching1", m1);
    write_matching("matching2", m2);
    for (std::size_t i = 0; i < d.cycles.size(); ++i) {
        out << "cycle " << i + 1;
        for (EdgeId e : d.cycles[i].edges) out << " " << e;
        out << "\n";
    }
    (void)g;
    return out.str();
}

// The oracle check suite over one instance. Returns verdict lines; witness
// files go next to the report when a directory is given.
std::vector<VerifyLine> verify_instance(const std::string& name, const EmbeddedGraph& original,
                                        bool ablate_wside, int enum_limit, int pair_budget,
                                        const std::string& witness_dir) {
    std::vector<VerifyLine> lines;
    auto norm = normalize(original);
    const EmbeddedGraph& pre_orient = norm.graph;

    bool bipartite = true;
    try {
        bipartition(pre_orient);
    } catch (const std::runtime_error&) {
        bipartite = false;
    }

    if (!bipartite) {
        auto pms = enumerate_pms(pre_orient, enum_limit);
        auto part = partition_classes(pms, pre_orient.genus);
        bool l2 = true;
        for (const auto& [sig, idxs] : part.classes)
            for (std::size_t a = 0; a < idxs.size(); ++a)
                for (std::size_t b = a + 1; b < idxs.size(); ++b)
                    l2 &= check_lemma2(pre_orient, pms[static_cast<std::size_t>(idxs[a])],
                                       pms[static_cast<std::size_t>(idxs[b])])
                              .pass;
        lines.push_back({"lemma2", l2 ? "PASS" : "FAIL", std::to_string(pms.size()) + " matchings"});
        lines.push_back({"lemma1", "SKIP", "not bipartite"});
        return lines;
    }

    WeighResult wr = weigh(pre_orient, {FamilyMode::oracle_assisted, false, enum_limit});
    WeightFunction wcomb_und = wr.wcomb_und;
    if (ablate_wside) {
        // Control run: drop w_side, keep the scale. The per-class uniqueness
        // check should now fail on instances whose tie only w_side breaks.
        WeightFunction ablated = wr.wpl;
        for (std::size_t i = 1; i < ablated.val.size(); ++i) ablated.val[i] *= wr.family.scale_inner;
        ablated.name = "w_comb[ablated]";
        wcomb_und = to_undirected(ablated);
    }

    auto pms = enumerate_pms(wr.graph, enum_limit);
    auto part = partition_classes(pms, wr.graph.genus);

    // Zero-signature check plus the reorientation argument, per same-class pair.
    bool l2 = true, proof_ok = true;
    int pairs_run = 0, proof_runs = 0;
    for (const auto& [sigbits, idxs] : part.classes) {
        for (std::size_t a = 0; a < idxs.size() && pairs_run < pair_budget; ++a)
            for (std::size_t b = a + 1; b < idxs.size() && pairs_run < pair_budget; ++b) {
                ++pairs_run;
                const Matching& m1 = pms[static_cast<std::size_t>(idxs[a])];
                const Matching& m2 = pms[static_cast<std::size_t>(idxs[b])];
                l2 &= check_lemma2(wr.graph, m1, m2).pass;
                auto decomp = sym_diff_decompose(wr.graph, m1, m2);
                auto pr = proof_orientation_check(wr.graph, wr.emb, wr.sigma, wr.wcomb, decomp);
                proof_ok &= pr.pass;
                ++proof_runs;
            }
    }
    lines.push_back({"lemma2", l2 ? "PASS" : "FAIL", std::to_string(pairs_run) + " same-class pairs"});
    lines.push_back({"proof_orientation", proof_ok ? "PASS" : "FAIL", std::to_string(proof_runs) + " cycle families"});

    auto l1 = check_lemma1(wr.graph, pms, wcomb_und);
    std::string l1note;
    if (!l1.pass && !witness_dir.empty()) {
        std::string base = name.substr(name.find_last_of('/') + 1);
        std::string path = witness_dir + "/" + base + ".lemma1.witness";
        std::ofstream out(path);
        out << witness_text(wr.graph, *l1.m1, *l1.m2, *l1.counterexample);
        l1note = path;
    }
    lines.push_back({"lemma1", l1.pass ? "PASS" : "FAIL", l1note});

    auto gb = check_global_bound(wr.graph, pms, wcomb_und);
    lines.push_back({"global_bound", gb.pass ? "PASS" : "FAIL",
                     std::to_string(gb.count) + " minima, bound " + std::to_string(gb.bound)});

    auto iso = check_isolation(wr.graph, pms, wr.family);
    std::string iso_note = iso.vacuous ? "vacuous (no perfect matching)"
                                       : (iso.witness_prime ? "p=" + iso.witness_prime->get_str() : "");
    lines.push_back({"isolation", iso.pass() ? "PASS" : "FAIL", iso_note});

    if (!norm.map.identity()) {
        auto pms_orig = enumerate_pms(original, enum_limit);
        bool counts = pms_orig.size() == pms.size();
        auto pulled = pull_back_weights(original, norm.map, wcomb_und);
        bool minima_ok = true;
        if (!pms.empty()) {
            Int mn = wcomb_und.of_matching(pms[0]);
            for (const Matching& m : pms) mn = std::min(mn, wcomb_und.of_matching(m));
            Int mo = pulled.induced.of_matching(pms_orig[0]);
            for (const Matching& m : pms_orig) mo = std::min(mo, pulled.induced.of_matching(m));
            minima_ok = mn == mo + pulled.offset;
        }
        lines.push_back({"normalize_bijection", counts && minima_ok ? "PASS" : "FAIL",
                         std::to_string(pms_orig.size()) + " vs " + std::to_string(pms.size())});
    }
    return lines;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"isolating weight functions for bounded-genus bipartite matching"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a PSG instance");
    std::string kind, gen_out;
    int rows = 4, cols = 4, genus = 1, length = 4, keep = 100;
    unsigned seed = 0;
    std::vector<std::string> cross_specs;
    gen->add_option("kind", kind, "planar-grid | torus-cycle | genus-g-random | k33-torus")->required();
    gen->add_option("--rows", rows);
    gen->add_option("--cols", cols);
    gen->add_option("--genus", genus);
    gen->add_option("--length", length);
    gen->add_option("--seed", seed);
    gen->add_option("--keep", keep, "percent of candidate edges kept");
    gen->add_option("--cross", cross_specs, "torus-cycle crossing, edge:pair:u|p (repeatable, curve order)");
    gen->add_option("-o,--out", gen_out);

    // weigh
    auto* weigh_cmd = app.add_subcommand("weigh", "build weight tables and the isolating family");
    std::string weigh_in, weigh_out;
    bool weigh_tight = false, weigh_constructive = false;
    int enum_limit = 24;
    weigh_cmd->add_option("instance", weigh_in)->required();
    weigh_cmd->add_flag("--tight-scale", weigh_tight, "computed scales instead of n^10");
    weigh_cmd->add_flag("--constructive", weigh_constructive, "every prime in budget, no oracle");
    weigh_cmd->add_option("--enum-limit", enum_limit);
    weigh_cmd->add_option("-o,--out", weigh_out);

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run the oracle check suite");
    std::vector<std::string> verify_in;
    bool ablate = false;
    int pair_budget = 2000;
    std::string witness_dir;
    verify_cmd->add_option("instances", verify_in)->required()->expected(-1);
    verify_cmd->add_flag("--ablate-wside", ablate, "control run with w_side zeroed");
    verify_cmd->add_option("--enum-limit", enum_limit);
    verify_cmd->add_option("--pair-budget", pair_budget);
    verify_cmd->add_option("--witness-dir", witness_dir);

    // decide
    auto* decide_cmd = app.add_subcommand("decide", "determinant decision for perfect matching");
    std::string decide_in;
    bool decide_loose = false, decide_constructive = false;
    decide_cmd->add_option("instance", decide_in)->required();
    decide_cmd->add_flag("--loose-scale", decide_loose, "n^10 scales instead of tight ones");
    decide_cmd->add_flag("--constructive", decide_constructive);
    decide_cmd->add_option("--enum-limit", enum_limit);

    // enumerate
    auto* enum_cmd = app.add_subcommand("enumerate", "list perfect matchings with signatures and weights");
    std::string enum_in;
    enum_cmd->add_option("instance", enum_in)->required();
    enum_cmd->add_option("--enum-limit", enum_limit);

    // draw
    auto* draw_cmd = app.add_subcommand("draw", "plot the planar subgraph");
    std::string draw_in, draw_out, draw_format = "svg";
    draw_cmd->add_option("instance", draw_in)->required();
    draw_cmd->add_option("--format", draw_format, "svg | dot");
    draw_cmd->add_option("-o,--out", draw_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*gen) {
            EmbeddedGraph g;
            if (kind == "planar-grid") {
                g = gen_planar_grid(rows, cols, seed, keep);
            } else if (kind == "torus-cycle") {
                std::map<int, std::vector<Crossing>> by_edge;
                parse_cross_specs(cross_specs, by_edge);
                g = gen_torus_cycle(length, by_edge, genus);
            } else if (kind == "genus-g-random") {
                g = gen_genus_g_random(genus, rows, cols, seed, keep);
            } else if (kind == "k33-torus") {
                g = gen_k33_torus();
            } else {
                std::cerr << "unknown kind '" << kind << "'\n";
                return 2;
            }
            emit(serialize_psg(g), gen_out);
            return 0;
        }

        if (*weigh_cmd) {
            EmbeddedGraph original = parse_psg(slurp(weigh_in));
            auto norm = normalize(original);
            WeighOptions opt{weigh_constructive ? FamilyMode::constructive : FamilyMode::oracle_assisted,
                             weigh_tight, enum_limit};
            WeighResult wr = weigh(norm.graph, opt);
            std::ostringstream out;
            out << "# instance " << weigh_in << "\n";
            out << "# normalized n=" << wr.graph.n << " m=" << wr.graph.num_edges() << " dummies_from="
                << norm.map.first_dummy << "\n";
            out << "# w_pl: signed areas from the straight-line grid drawing\n";
            out << "# w_side: +-sigma index over boundary crossings\n";
            out << "scale_inner " << wr.family.scale_inner.get_str() << "\n";
            out << "scale_outer " << wr.family.scale_outer.get_str() << "\n";
            out << table(wr.wpl) << table(wr.wside) << table(wr.wcomb) << table(wr.wcomb_und);
            out << "family members " << wr.family.members.size() << " bit_budget "
                << wr.family.fks_bit_budget << " doublings " << wr.family.fks_doublings
                << (wr.family.vacuous ? " vacuous" : "") << "\n";
            for (const FamilyMember& m : wr.family.members) {
                out << "member p=" << m.prime.get_str() << "\n";
                out << table(m.w);
            }
            emit(out.str(), weigh_out);
            return 0;
        }

        if (*verify_cmd) {
            bool any_fail = false;
            for (const std::string& path : verify_in) {
                EmbeddedGraph g = parse_psg(slurp(path));
                auto lines = verify_instance(path, g, ablate, enum_limit, pair_budget, witness_dir);
                for (const VerifyLine& l : lines) {
                    std::cout << path << " " << l.check << " " << l.verdict;
                    if (!l.note.empty()) std::cout << " [" << l.note << "]";
                    std::cout << "\n";
                    any_fail |= l.verdict == "FAIL";
                }
            }
            return any_fail ? 1 : 0;
        }

        if (*decide_cmd) {
            EmbeddedGraph original = parse_psg(slurp(decide_in));
            auto norm = normalize(original);
            WeighOptions opt{decide_constructive ? FamilyMode::constructive : FamilyMode::oracle_assisted,
                             !decide_loose, enum_limit};
            WeighResult wr = weigh(norm.graph, opt);
            DecideReport rep = decide_pm(wr.graph, wr.family);
            for (const DecideMemberOutcome& m : rep.members) {
                std::cout << "member p=" << m.prime.get_str() << " det=" << (m.det_zero ? "zero" : "nonzero");
                if (!m.det_zero)
                    std::cout << " bits=" << m.det_bits.get_str() << " lowbit=" << m.lowest_bit.get_str()
                              << " weight=" << m.witness_weight.get_str();
                std::cout << "\n";
            }
            if (rep.alarm) {
                std::cout << "SOUNDNESS ALARM: determinant and matching search disagree\n";
                return 1;
            }
            if (rep.has_pm)
                std::cout << "perfect matching exists, min weight " << rep.witness_weight->get_str()
                          << " under p=" << rep.witness_prime->get_str() << "\n";
            else
                std::cout << "no perfect matching\n";
            return 0;
        }

        if (*enum_cmd) {
            EmbeddedGraph original = parse_psg(slurp(enum_in));
            auto norm = normalize(original);
            bool bip = true;
            try {
                bipartition(norm.graph);
            } catch (const std::runtime_error&) {
                bip = false;
            }
            if (!bip) {
                auto pms = enumerate_pms(norm.graph, enum_limit);
                std::cout << "# " << pms.size() << " perfect matchings (no weights: not bipartite)\n";
                for (const Matching& m : pms) {
                    std::cout << "matching sig=" << m.sig.str() << " edges";
                    for (EdgeId e : m.edges) std::cout << " " << e;
                    std::cout << "\n";
                }
                return 0;
            }
            WeighResult wr = weigh(norm.graph, {FamilyMode::oracle_assisted, false, enum_limit});
            auto pms = enumerate_pms(wr.graph, enum_limit);
            std::cout << "# " << pms.size() << " perfect matchings\n";
            for (const Matching& m : pms) {
                std::cout << "matching sig=" << m.sig.str() << " w_comb="
                          << wr.wcomb_und.of_matching(m).get_str();
                if (!wr.family.members.empty())
                    std::cout << " w_p=" << wr.family.members[0].w.of_matching(m).get_str();
                std::cout << " edges";
                for (EdgeId e : m.edges) std::cout << " " << e;
                std::cout << "\n";
            }
            return 0;
        }

        if (*draw_cmd) {
            EmbeddedGraph g = parse_psg(slurp(draw_in));
            GridEmbedding emb = embed_planar_subgraph(g);
            if (draw_format == "svg") emit(draw_svg(g, emb), draw_out);
            else if (draw_format == "dot") emit(draw_dot(g, emb), draw_out);
            else {
                std::cerr << "unknown format '" << draw_format << "'\n";
                return 2;
            }
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
