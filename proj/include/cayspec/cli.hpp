#pragma once

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cayspec/audits.hpp"
#include "cayspec/cayley.hpp"
#include "cayspec/discrepancy.hpp"
#include "cayspec/generators.hpp"
#include "cayspec/graph_io.hpp"
#include "cayspec/interval_profile.hpp"
#include "cayspec/rational.hpp"
#include "cayspec/spectrum.hpp"
#include "cayspec/walks.hpp"
#include "cayspec/witness.hpp"

namespace cayspec::cli {

using nlohmann::json;

inline constexpr const char* kRationalHelp =
    "rational, written as a decimal string (\"0.2\" parses to 1/5) or a fraction (\"1/3\")";

inline std::vector<u64> parse_index_list(const std::string& text) {
    std::vector<u64> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoull(item));
    }
    return out;
}

inline json set_to_json(const VertexSet& s) {
    json arr = json::array();
    for (u64 v : s.members()) arr.push_back(v);
    return arr;
}

inline void emit(const json& j, const std::string& output_path, std::ostream& out) {
    std::string text = j.dump(2) + "\n";
    if (output_path.empty()) {
        out << text;
    } else {
        std::ofstream f(output_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write output file: " + output_path);
        f << text;
    }
}

inline std::string verdict_name(DiscReport::Verdict v) {
    switch (v) {
        case DiscReport::Verdict::VerifiedExhaustive: return "verified-exhaustive";
        case DiscReport::Verdict::NoViolationFound: return "no-violation-found";
        case DiscReport::Verdict::Violated: return "violated";
    }
    return "?";
}

inline json disc_report_to_json(const DiscReport& rep, const std::string& mode) {
    json j;
    j["delta"] = rep.delta.to_string();
    j["mode"] = mode;
    j["verdict"] = verdict_name(rep.verdict);
    j["samples"] = rep.samples;
    if (mode == "sampled") j["seed"] = rep.seed;
    if (rep.violated()) {
        json sets = json::array();
        for (const VertexSet& s : rep.sets) sets.push_back(set_to_json(s));
        j["witness"] = sets;
        j["deviation"] = rep.deviation.to_string();
        j["deviation_value"] = rep.deviation.to_double();
    }
    return j;
}

struct Session {
    std::ostream& out;
    std::ostream& err;
};

// Entry point shared by the binary and the tests.  Returns the process
// exit code: 0 computed, 1 adverse verdict under --strict, 2 usage error.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cayley graph spectra and quasirandomness checks"};
    app.require_subcommand(1);

    // ---- generate ----
    auto* gen = app.add_subcommand("generate", "generate a graph document");
    std::string family, gen_output;
    u64 gen_n = 0, gen_k = 1, gen_seed = 0;
    std::string gen_p, gen_alpha, gen_input;
    bool gen_seed_set = false;
    gen->add_option("--family", family, "interval | cyclic-random | gnp-clique | complete | blowup")
        ->required();
    gen->add_option("--n", gen_n, "group order / vertex count");
    gen->add_option("--k", gen_k, "interval radius (interval) or blowup factor (blowup)");
    gen->add_option("--p", gen_p, std::string("edge probability, ") + kRationalHelp);
    gen->add_option("--alpha", gen_alpha, std::string("clique scale, ") + kRationalHelp);
    gen->add_option("--seed", gen_seed, "RNG seed (required for randomized families)")
        ->each([&](const std::string&) { gen_seed_set = true; });
    gen->add_option("--input", gen_input, "input graph document (blowup)");
    gen->add_option("-o,--output", gen_output, "output file")->required();

    // ---- common graph-input helpers ----
    auto add_graph_arg = [](CLI::App* cmd, std::string& path) {
        cmd->add_option("graph", path, "graph document (JSON)")->required();
    };

    // ---- spectrum ----
    auto* spectrum_cmd = app.add_subcommand("spectrum", "eigenvalues of a graph document");
    std::string spec_graph, spec_format = "json", spec_output;
    unsigned spec_threads = 1;
    spectrum_cmd->add_option("--format", spec_format, "json | csv");
    spectrum_cmd->add_option("--threads", spec_threads, "worker threads for the character sums");
    spectrum_cmd->add_option("-o,--output", spec_output, "output file");
    add_graph_arg(spectrum_cmd, spec_graph);

    // ---- eig ----
    auto* eig_cmd = app.add_subcommand("eig", "eigenvalue-gap verdict");
    std::string eig_graph, eig_eps, eig_output;
    bool eig_strict = false;
    eig_cmd->add_option("--eps", eig_eps, std::string("tolerance, ") + kRationalHelp)->required();
    eig_cmd->add_flag("--strict", eig_strict, "exit 1 when the property fails");
    eig_cmd->add_option("-o,--output", eig_output, "output file");
    add_graph_arg(eig_cmd, eig_graph);

    // ---- disc ----
    auto* disc_cmd = app.add_subcommand("disc", "discrepancy verdict");
    std::string disc_graph, disc_delta, disc_mode = "sampled", disc_output, disc_sets_file;
    std::vector<std::string> disc_sets, disc_pairs;
    u64 disc_samples = 1000, disc_seed = 0;
    bool disc_strict = false, disc_bipartite = false, disc_seed_set = false;
    disc_cmd->add_option("--delta", disc_delta, std::string("tolerance, ") + kRationalHelp)
        ->required();
    disc_cmd->add_option("--mode", disc_mode, "exhaustive | sampled | guided");
    disc_cmd->add_option("--samples", disc_samples, "sample count (sampled mode)");
    disc_cmd->add_option("--seed", disc_seed, "RNG seed (required in sampled mode)")
        ->each([&](const std::string&) { disc_seed_set = true; });
    disc_cmd->add_flag("--bipartite", disc_bipartite, "check disjoint pairs instead of single sets");
    disc_cmd->add_option("--set", disc_sets,
                         "guided candidate set as comma-separated vertex indices (repeatable)");
    disc_cmd->add_option("--pair", disc_pairs,
                         "guided candidate pair \"u1,u2;w1,w2\" (repeatable, bipartite)");
    disc_cmd->add_option("--sets-file", disc_sets_file,
                         "JSON file with an array of candidate sets (or [U, W] pairs)");
    disc_cmd->add_flag("--strict", disc_strict, "exit 1 on a violated verdict");
    disc_cmd->add_option("-o,--output", disc_output, "output file");
    add_graph_arg(disc_cmd, disc_graph);

    // ---- witness ----
    auto* wit_cmd = app.add_subcommand("witness", "extract a discrepancy violator from a failed gap");
    std::string wit_graph, wit_eps, wit_slack = "1/20", wit_delta, wit_output;
    u64 wit_seed = 0;
    unsigned wit_tries = 20;
    bool wit_strict = false;
    wit_cmd->add_option("--eps", wit_eps, std::string("gap tolerance, ") + kRationalHelp)->required();
    wit_cmd->add_option("--seed", wit_seed, "RNG seed")->required();
    wit_cmd->add_option("--max-tries", wit_tries, "sampling attempts");
    wit_cmd->add_option("--slack", wit_slack,
                        std::string("size-window slack around target densities, ") + kRationalHelp);
    wit_cmd->add_option("--delta", wit_delta,
                        std::string("override the derived discrepancy tolerance, ") + kRationalHelp);
    wit_cmd->add_flag("--strict", wit_strict, "exit 1 when no violator is found");
    wit_cmd->add_option("-o,--output", wit_output, "output file");
    add_graph_arg(wit_cmd, wit_graph);

    // ---- walks ----
    auto* walks_cmd = app.add_subcommand("walks", "closed-walk counts");
    std::string walks_graph, walks_method = "both", walks_tol, walks_output;
    unsigned walks_len = 4;
    bool walks_circuit = false, walks_strict = false;
    walks_cmd->add_option("--length", walks_len, "walk length");
    walks_cmd->add_option("--method", walks_method, "spectral | matrix | both");
    walks_cmd->add_flag("--circuit", walks_circuit, "evaluate the walk-count property");
    walks_cmd->add_option("--tol", walks_tol, std::string("property tolerance, ") + kRationalHelp);
    walks_cmd->add_flag("--strict", walks_strict, "exit 1 when the property fails");
    walks_cmd->add_option("-o,--output", walks_output, "output file");
    add_graph_arg(walks_cmd, walks_graph);

    // ---- audit ----
    auto* audit_cmd = app.add_subcommand("audit", "exact identity and bound audits");
    std::string audit_graph, audit_output;
    std::vector<u64> audit_chars;
    bool audit_strict = false;
    audit_cmd->add_option("--t", audit_chars,
                          "character indices to audit (default: all nontrivial)");
    audit_cmd->add_flag("--strict", audit_strict, "exit 1 when any gated audit fails");
    audit_cmd->add_option("-o,--output", audit_output, "output file");
    add_graph_arg(audit_cmd, audit_graph);

    try {
        std::vector<const char*> argv;
        argv.push_back("cayspec");
        for (const std::string& a : args) argv.push_back(a.c_str());
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (gen->parsed()) {
            GraphDocument doc;
            if (family == "interval") {
                doc = GraphDocument::from_graph(interval_cayley(gen_n, gen_k));
            } else if (family == "complete") {
                doc = GraphDocument::from_graph(complete_cayley(gen_n));
            } else if (family == "cyclic-random") {
                if (!gen_seed_set) throw std::invalid_argument("cyclic-random requires --seed");
                doc = GraphDocument::from_graph(
                    random_cyclic_cayley(gen_n, Rational::parse(gen_p), gen_seed));
            } else if (family == "gnp-clique") {
                if (!gen_seed_set) throw std::invalid_argument("gnp-clique requires --seed");
                doc = GraphDocument::from_graph(gnp_plus_clique(
                    gen_n, Rational::parse(gen_p), Rational::parse(gen_alpha), gen_seed));
            } else if (family == "blowup") {
                if (gen_input.empty()) throw std::invalid_argument("blowup requires --input");
                doc = GraphDocument::from_graph(
                    blowup(GraphDocument::load(gen_input).to_cayley(), std::uint32_t(gen_k)));
            } else {
                throw std::invalid_argument("unknown family '" + family + "'");
            }
            doc.save(gen_output);
            if (doc.kind == GraphDocument::Kind::Cayley) {
                CayleyGraph G = doc.to_cayley();
                double density = G.order() > 1
                                     ? double(G.degree()) / double(G.order() - 1)
                                     : 0.0;
                out << "order=" << G.order() << " degree=" << G.degree()
                    << " density=" << density << "\n";
            } else {
                GenericGraph G = doc.to_generic();
                double density = G.order() > 1 ? G.average_degree() / double(G.order() - 1) : 0.0;
                out << "order=" << G.order() << " degree=" << G.average_degree()
                    << " density=" << density << "\n";
            }
            return 0;
        }

        if (spectrum_cmd->parsed()) {
            GraphDocument doc = GraphDocument::load(spec_graph);
            json j;
            if (doc.kind == GraphDocument::Kind::Cayley) {
                CayleyGraph G = doc.to_cayley();
                Spectrum spec = eigenvalues_character(G, spec_threads);
                if (spec_format == "csv") {
                    std::ostringstream csv;
                    csv << "index,t,lambda\n";
                    for (std::size_t i = 0; i < spec.entries.size(); ++i) {
                        Element t = G.group().element_at(spec.entries[i].character);
                        std::string ts;
                        for (std::size_t c = 0; c < t.residues.size(); ++c) {
                            if (c) ts += ";";
                            ts += std::to_string(t.residues[c]);
                        }
                        csv << i + 1 << "," << ts << "," << spec.entries[i].lambda << "\n";
                    }
                    if (spec_output.empty()) {
                        out << csv.str();
                    } else {
                        std::ofstream f(spec_output, std::ios::binary);
                        f << csv.str();
                    }
                    return 0;
                }
                j["kind"] = "cayley";
                j["order"] = G.order();
                j["degree"] = G.degree();
                j["residual"] = spec.residual;
                json entries = json::array();
                for (const SpectrumEntry& e : spec.entries)
                    entries.push_back({{"character", e.character}, {"lambda", e.lambda}});
                j["eigenvalues"] = entries;
            } else {
                GenericGraph G = doc.to_generic();
                std::vector<double> eig = eigenvalues_dense(adjacency_matrix(G));
                j["kind"] = "generic";
                j["order"] = G.order();
                j["average_degree"] = G.average_degree();
                j["eigenvalues"] = eig;
            }
            emit(j, spec_output, out);
            return 0;
        }

        if (eig_cmd->parsed()) {
            GraphDocument doc = GraphDocument::load(eig_graph);
            if (doc.kind != GraphDocument::Kind::Cayley) {
                err << "eig: generic documents are not supported\n";
                return 2;
            }
            CayleyGraph G = doc.to_cayley();
            EigReport rep =
                check_eig(eigenvalues_character(G), Rational::parse(eig_eps), G.average_degree());
            json j;
            j["eps"] = Rational::parse(eig_eps).to_string();
            j["lambda1"] = rep.lambda1;
            j["second"] = rep.second;
            j["average_degree"] = rep.average_degree;
            j["holds"] = rep.holds;
            if (rep.failing_character) j["failing_character"] = *rep.failing_character;
            emit(j, eig_output, out);
            return eig_strict && !rep.holds ? 1 : 0;
        }

        if (disc_cmd->parsed()) {
            GraphDocument doc = GraphDocument::load(disc_graph);
            Rational delta = Rational::parse(disc_delta);
            // Candidates for guided mode.
            std::vector<VertexSet> guided_sets;
            std::vector<std::pair<VertexSet, VertexSet>> guided_pairs;
            auto make_set = [](u64 n, const std::vector<u64>& idx) { return VertexSet::of(n, idx); };

            auto run_on = [&](const auto& G) -> std::pair<int, json> {
                const u64 n = G.order();
                for (const std::string& s : disc_sets)
                    guided_sets.push_back(make_set(n, parse_index_list(s)));
                for (const std::string& s : disc_pairs) {
                    auto semi = s.find(';');
                    if (semi == std::string::npos)
                        throw std::invalid_argument("--pair needs \"u,...;w,...\"");
                    guided_pairs.emplace_back(make_set(n, parse_index_list(s.substr(0, semi))),
                                              make_set(n, parse_index_list(s.substr(semi + 1))));
                }
                if (!disc_sets_file.empty()) {
                    std::ifstream f(disc_sets_file);
                    if (!f) throw std::runtime_error("cannot open " + disc_sets_file);
                    json arr = json::parse(f);
                    for (const auto& entry : arr) {
                        if (disc_bipartite) {
                            guided_pairs.emplace_back(
                                make_set(n, entry.at(0).get<std::vector<u64>>()),
                                make_set(n, entry.at(1).get<std::vector<u64>>()));
                        } else {
                            guided_sets.push_back(make_set(n, entry.get<std::vector<u64>>()));
                        }
                    }
                }
                DiscReport rep;
                if (disc_mode == "exhaustive") {
                    rep = disc_bipartite ? check_disc2(G, delta, ExhaustiveStrategy{})
                                         : check_disc(G, delta, ExhaustiveStrategy{});
                } else if (disc_mode == "sampled") {
                    if (!disc_seed_set)
                        throw std::invalid_argument("sampled mode requires --seed");
                    SampledStrategy s{disc_samples, disc_seed};
                    rep = disc_bipartite ? check_disc2(G, delta, s) : check_disc(G, delta, s);
                } else if (disc_mode == "guided") {
                    rep = disc_bipartite ? check_disc2(G, delta, GuidedPairs{guided_pairs})
                                         : check_disc(G, delta, GuidedSets{guided_sets});
                } else {
                    throw std::invalid_argument("unknown mode '" + disc_mode + "'");
                }
                json j = disc_report_to_json(rep, disc_mode);
                j["bipartite"] = disc_bipartite;
                return {disc_strict && rep.violated() ? 1 : 0, j};
            };

            std::pair<int, json> result;
            if (doc.kind == GraphDocument::Kind::Cayley) {
                CayleyGraph G = doc.to_cayley();
                result = run_on(G);
            } else {
                if (disc_mode == "exhaustive") {
                    err << "disc: exhaustive mode is not supported on generic documents\n";
                    return 2;
                }
                GenericGraph G = doc.to_generic();
                result = run_on(G);
            }
            emit(result.second, disc_output, out);
            return result.first;
        }

        if (wit_cmd->parsed()) {
            GraphDocument doc = GraphDocument::load(wit_graph);
            if (doc.kind != GraphDocument::Kind::Cayley) {
                err << "witness: generic documents are not supported\n";
                return 2;
            }
            CayleyGraph G = doc.to_cayley();
            std::optional<Rational> delta_override;
            if (!wit_delta.empty()) delta_override = Rational::parse(wit_delta);
            ExtractResult res =
                extract_disc_violator(G, Rational::parse(wit_eps), wit_seed, wit_tries,
                                      Rational::parse(wit_slack), delta_override);
            json j;
            j["eps"] = Rational::parse(wit_eps).to_string();
            j["seed"] = wit_seed;
            j["max_tries"] = wit_tries;
            switch (res.status) {
                case ExtractResult::Status::Found: {
                    const WitnessOutcome& w = *res.outcome;
                    j["status"] = "found";
                    j["character"] = w.character;
                    j["tries_used"] = w.tries_used;
                    j["eta"] = w.eta.to_string();
                    j["X"] = set_to_json(w.X);
                    j["Y"] = set_to_json(w.Y);
                    j["violator"] = {{"kind", violator_name(w.violator)},
                                     {"set", set_to_json(w.violator_set)},
                                     {"size", w.violator_set.count()},
                                     {"deviation", w.deviation.to_string()},
                                     {"deviation_value", w.deviation.to_double()},
                                     {"delta", w.delta_used.to_string()}};
                    break;
                }
                case ExtractResult::Status::NoLargeEigenvalue:
                    j["status"] = "no-large-eigenvalue";
                    break;
                case ExtractResult::Status::Exhausted:
                    j["status"] = "exhausted";
                    j["character"] = res.character;
                    j["trials"] = res.trials;
                    j["best_eta"] = res.best_eta.to_string();
                    break;
            }
            emit(j, wit_output, out);
            return wit_strict && !res.found() ? 1 : 0;
        }

        if (walks_cmd->parsed()) {
            GraphDocument doc = GraphDocument::load(walks_graph);
            json j;
            int rc = 0;
            if (doc.kind == GraphDocument::Kind::Cayley) {
                CayleyGraph G = doc.to_cayley();
                if (walks_circuit) {
                    Rational tol = walks_tol.empty() ? Rational(1, 2) : Rational::parse(walks_tol);
                    CircuitReport rep = check_circuit(G, walks_len, tol);
                    j["length"] = rep.length;
                    j["tol"] = rep.tol.to_string();
                    j["count"] = rep.count;
                    j["dbar_power"] = rep.dbar_power;
                    j["deviation_ratio"] = rep.deviation_ratio;
                    j["pass"] = rep.pass;
                    rc = walks_strict && !rep.pass ? 1 : 0;
                } else {
                    WalkMethod method = walks_method == "spectral" ? WalkMethod::Spectral
                                        : walks_method == "matrix" ? WalkMethod::Matrix
                                                                   : WalkMethod::Both;
                    WalkReport rep = closed_walk_count(G, walks_len, method);
                    j["length"] = rep.length;
                    if (rep.count_spectral) j["count_spectral"] = *rep.count_spectral;
                    if (rep.count_matrix) j["count_matrix"] = cayspec::to_string(*rep.count_matrix);
                    j["dbar_power"] = rep.dbar_power;
                    j["deviation"] = rep.deviation;
                }
            } else {
                if (walks_circuit) {
                    err << "walks: --circuit is not supported on generic documents\n";
                    return 2;
                }
                GenericGraph G = doc.to_generic();
                WalkReport rep = closed_walk_count(G, walks_len);
                j["length"] = rep.length;
                j["count_matrix"] = cayspec::to_string(*rep.count_matrix);
                j["dbar_power"] = rep.dbar_power;
                j["deviation"] = rep.deviation;
            }
            emit(j, walks_output, out);
            return rc;
        }

        if (audit_cmd->parsed()) {
            GraphDocument doc = GraphDocument::load(audit_graph);
            if (doc.kind != GraphDocument::Kind::Cayley) {
                err << "audit: generic documents are not supported\n";
                return 2;
            }
            CayleyGraph G = doc.to_cayley();
            std::vector<u64> chars = audit_chars;
            if (chars.empty())
                for (u64 t = 1; t < G.order(); ++t) chars.push_back(t);
            json j;
            json all = json::array();
            u64 met = 0, failed = 0, skipped = 0;
            for (u64 ti : chars) {
                CharacterIndex t{G.group().element_at(ti)};
                if (G.group().is_trivial(t)) continue;
                for (const LemmaAudit& a : audit_appendix_lemmas(G, t)) {
                    json e;
                    e["character"] = ti;
                    e["name"] = a.name;
                    e["params"] = a.params;
                    e["hypotheses_met"] = a.hypotheses_met;
                    e["conclusion_holds"] = a.conclusion_holds;
                    e["slack"] = a.slack;
                    if (!a.note.empty()) e["note"] = a.note;
                    all.push_back(e);
                    if (!a.hypotheses_met) {
                        ++skipped;
                    } else if (a.conclusion_holds) {
                        ++met;
                    } else {
                        ++failed;
                    }
                }
            }
            j["entries"] = all;
            j["summary"] = {{"passed", met}, {"failed", failed}, {"skipped", skipped}};
            emit(j, audit_output, out);
            return audit_strict && failed > 0 ? 1 : 0;
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const SizeLimitError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace cayspec::cli
