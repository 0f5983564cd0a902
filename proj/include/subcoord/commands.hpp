#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "caching/bounds.hpp"
#include "caching/builtin.hpp"
#include "caching/search.hpp"
#include "caching/zdecomp.hpp"
#include "discoord.hpp"
#include "formula.hpp"
#include "random.hpp"
#include "report.hpp"

/// Command implementations behind the subcoord_cli tool. Each takes file
/// contents and options and returns a Report; I/O stays in the tool.
namespace subcoord::commands {

using caching::CachingScheme;
using caching::Demand;

/// Runs body, turning library exceptions into report statuses.
inline Report guarded(const std::string& command, const std::function<void(Report&)>& body) {
    Report r;
    r.command = command;
    try {
        body(r);
    } catch (const Refusal& e) {
        r.status = Status::refused;
        r.message = "refused (" + e.guard() + "): " + e.what();
    } catch (const ParseError& e) {
        r.status = Status::error;
        r.message = std::string("parse error: ") + e.what();
    } catch (const ContractViolation& e) {
        r.status = Status::error;
        r.message = std::string("invalid input: ") + e.what();
    }
    return r;
}

inline std::string demand_key(const Demand& d) {
    std::string s;
    for (int x : d) s += std::to_string(x);
    return s;
}

inline Report verify(const std::string& text) {
    return guarded("verify", [&](Report& r) {
        const CachingScheme s = caching::parse_scheme(text);
        const auto v = caching::verify_scheme(s);
        r.set("N", s.N()).set("K", s.K()).set("F", s.F());
        r.set("demands_checked", v.demands_checked).set("complete", v.complete).set("valid", v.valid);
        for (const auto& f : v.failures)
            r.witnesses.push_back("X " + caching::demand_string(f.demand) + " user " + std::to_string(f.user) +
                                  " cannot recover " + f.witness.to_string());
        r.fail_if(!v.valid);
    });
}

struct DiscoordOptions {
    bool brute = false;
    bool minimizer = false;
    bool profile = false;
};

inline Report discoord(const std::string& text, const DiscoordOptions& opt) {
    return guarded("discoord", [&](Report& r) {
        const SubspaceFamily fam = caching::parse_family(text);
        r.set("members", fam.size()).set("ambient", fam.ambient_dim());
        const std::size_t dc = discoordination(fam);
        r.set("discoordination", dc);
        if (opt.minimizer) {
            const MinimizerResult m = greedy_minimizer(fam);
            for (std::size_t j = 1; j < m.parts.size(); ++j) r.rows["minimizer"]["X" + std::to_string(j)] = Report::value(m.parts[j]);
            r.rows["minimizer"]["discoordination"] = m.discoordination;
            r.fail_if(m.discoordination != dc);
        }
        if (opt.profile) r.set("d_profile", d_profile(fam));
        if (opt.brute) {
            const std::size_t b = discoordination_brute(fam);
            r.set("brute", b).set("brute_equal", b == dc);
            r.fail_if(b != dc);
        }
    });
}

inline Report decompose3(const std::string& text) {
    return guarded("decompose3", [&](Report& r) {
        const SubspaceFamily fam = caching::parse_family(text);
        if (fam.size() != 3)
            throw ContractViolation("decompose3 needs exactly three members, got " + std::to_string(fam.size()));
        const ThreeDecomposition d = decompose_three(fam[0], fam[1], fam[2]);
        r.set("m", d.m).set("discoordination", discoordination(fam));
        r.set("u1_dim", d.u1.dim()).set("u2_dim", d.u2.dim());
        r.set("u1_basis", d.u1_basis);
        Report::Json triples = Report::Json::array();
        for (const LiftedTriple& t : d.triples)
            triples.push_back(t.a.to_string() + "," + t.b.to_string() + "," + t.c.to_string());
        r.rows["triples"] = triples;
        const char* names[3] = {"A", "B", "C"};
        for (std::size_t i = 0; i < 3; ++i) {
            r.rows["factors"][names[i]]["in_u1"] = d.factors[i].first.dim();
            r.rows["factors"][names[i]]["in_u2"] = d.factors[i].second.dim();
        }
        r.fail_if(d.m != discoordination(fam));
    });
}

inline Report zdecomp(const std::string& text, std::optional<int> user) {
    return guarded("zdecomp", [&](Report& r) {
        const CachingScheme s = caching::parse_scheme(text);
        std::vector<int> users;
        if (user) {
            s.check_user(*user);
            users.push_back(*user);
        } else {
            for (int j = 1; j <= s.K(); ++j) users.push_back(j);
        }
        const char* sides[3] = {"A", "B", "C"};
        for (int j : users) {
            const auto d = caching::z_decompose(s.cache(j), s);
            const std::string key = "Z" + std::to_string(j);
            r.rows[key]["dim"] = s.cache(j).dim();
            for (std::size_t side = 0; side < 3; ++side) {
                Report::Json levels = Report::Json::array();
                for (const Subspace& b : d.blocks[side]) levels.push_back(b.dim());
                r.rows[key]["levels"][sides[side]] = levels;
            }
            r.rows[key]["tian_pairs"] = d.a2.size();
            r.rows[key]["ab_pairs"] = d.a3.size();
            r.rows[key]["ac_pairs"] = d.a4.size();
            r.rows[key]["bc_pairs"] = d.b4.size();
            r.rows[key]["triple_sums"] = d.a5.size();
            const bool ok = caching::z_decomposition_invariants(d, s.cache(j), s);
            r.rows[key]["invariants"] = ok;
            r.fail_if(!ok);
        }
    });
}

inline Report analyze(const std::string& text) {
    return guarded("analyze", [&](Report& r) {
        const CachingScheme s = caching::parse_scheme(text);
        const auto v = caching::verify_scheme(s);
        r.set("N", s.N()).set("K", s.K()).set("F", s.F());
        r.set("valid", v.valid).set("complete", v.complete);
        r.fail_if(!v.valid);
        const caching::BoundReport b = caching::bound_report(s);
        r.set("M", b.rates.M).set("M_avg", b.rates.M_avg);
        if (b.rates.R) r.set("R", *b.rates.R).set("R_avg", *b.rates.R_avg);
        if (b.rates.R_avg_distinct) r.set("R_avg_distinct", *b.rates.R_avg_distinct);
        if (b.ratios) {
            for (std::size_t i = 0; i < 5; ++i) r.rows["ratios"]["r" + std::to_string(i + 1)] = Report::value(b.ratios->r[i]);
            r.rows["ratios"]["uniform"] = b.ratios->uniform;
            r.rows["ratios"]["sum"] = Report::value(b.ratios->total());
        }
        if (b.separated) r.set("separated", *b.separated);
        for (const caching::BoundRow& row : b.rows) {
            auto& j = r.rows["bounds"][row.name];
            if (row.skipped) {
                j["skipped"] = *row.skipped;
                continue;
            }
            j["lhs"] = Report::value(row.lhs);
            j["rhs"] = Report::value(row.rhs);
            j["satisfied"] = row.satisfied();
            j["tight"] = row.tight();
            if (!row.proven) j["conjecture"] = true;
        }
        r.fail_if(!b.all_proven_satisfied());
        if (b.tian) {
            auto& t = r.rows["tian_audit"];
            t["hypothesis"] = b.tian->hypothesis;
            t["block_ranks"] = b.tian->block_ranks;
            t["group_ranks"] = b.tian->group_ranks;
            t["lhs"] = Report::value(b.tian->lhs);
        }
        if (s.N() == 3 && s.K() == 3 && s.has_broadcast({1, 2, 3}) && s.has_broadcast({2, 1, 3})) {
            const caching::DiscoordAudit a = caching::discoord_audit(s);
            auto& j = r.rows["discoord_audit"];
            j["delta"] = Report::value(a.delta);
            j["delta_prime"] = Report::value(a.delta_prime);
            j["s1"] = Report::value(a.s1);
            j["s2"] = Report::value(a.s2);
            j["lhs"] = Report::value(a.lhs);
            j["rhs_first"] = Report::value(a.rhs_first);
            j["rhs_second"] = Report::value(a.rhs_second);
            j["first_holds"] = a.first_holds();
            j["second_holds"] = a.second_holds();
            if (v.valid) r.fail_if(!a.first_holds());
        }
    });
}

/// Text of a search result that can be appended to the scheme file.
inline std::string search_section(const Demand& d, const caching::SearchResult& res) {
    std::string out = "\n# dim " + std::to_string(res.x.dim()) + (res.minimal ? " (minimum)" : "") + "\nX";
    for (int x : d) out += " " + std::to_string(x);
    out += "\n";
    for (const Vector& v : res.x.basis_vectors()) out += v.to_string() + "\n";
    return out;
}

inline Report search(const std::string& text, const Demand& d, caching::SearchMode mode, std::string* section = nullptr) {
    return guarded("search", [&](Report& r) {
        const CachingScheme s = caching::parse_scheme(text);
        if (d.size() != static_cast<std::size_t>(s.K()))
            throw ContractViolation("demand needs " + std::to_string(s.K()) + " entries");
        const auto res = caching::search_min_x(s, d, mode);
        r.set("demand", demand_key(d)).set("mode", mode == caching::SearchMode::exhaustive ? "exhaustive" : "greedy");
        r.set("dim", res.x.dim()).set("lower_bound", res.lower_bound).set("minimal", res.minimal);
        if (mode == caching::SearchMode::exhaustive) r.set("examined", res.examined);
        r.set("generators", res.x.basis_vectors());
        r.fail_if(!caching::decodes(s, d, res.x));
        if (section) *section = search_section(d, res);
    });
}

/// Seeded cross-validation of the closed-form results against the
/// brute-force oracles.
inline Report oracle(std::uint64_t seed, std::size_t count) {
    return guarded("oracle", [&](Report& r) {
        Rng rng(seed);
        const Field two(2);
        std::size_t brute_mismatch = 0, greedy_bad = 0, profile_bad = 0, formula_bad = 0, decomp_bad = 0;
        std::size_t quotient_bad = 0, zdecomp_bad = 0;
        std::vector<Formula> formulas;
        for (const std::string& f : discoordination_formulas()) formulas.push_back(Formula::parse(f));
        std::uniform_int_distribution<std::size_t> nd(1, 4), md(3, 4);
        for (std::size_t it = 0; it < count; ++it) {
            const std::size_t n = nd(rng), m = md(rng);
            const SubspaceFamily fam = random_family(two, n, m, rng);
            const std::size_t dc = discoordination(fam);
            if (dc != discoordination_brute(fam)) ++brute_mismatch;
            const MinimizerResult g = greedy_minimizer(fam);
            if (g.discoordination != dc) ++greedy_bad;
            const auto prof = d_profile(fam);
            long long total = 0;
            for (long long x : prof) total += x;
            if (total != static_cast<long long>(dc) || prof[m - 1] != 0 || prof[m - 2] != 0) ++profile_bad;

            const Subspace& a = fam[0];
            const Subspace& b = fam[1];
            const Subspace& c = fam[2];
            const std::size_t d3 = discoordination({a, b, c});
            for (const Formula& f : formulas)
                if (f.evaluate({a, b, c}) != static_cast<long long>(d3)) ++formula_bad;
            if (decompose_three(a, b, c).m != d3) ++decomp_bad;
            const Subspace dsub = random_subspace_of(intersect(a, b), rng);
            const auto q = quotient_discoord_check(a, b, c, dsub);
            if (q.first != q.second) ++quotient_bad;
        }
        for (std::size_t it = 0; it < count; ++it) {
            const int F = static_cast<int>(1 + it % 3);
            const CachingScheme shell(two, 3, 3, F);
            const Subspace z = random_subspace(two, shell.ambient_dim(), rng);
            if (!caching::z_decomposition_invariants(caching::z_decompose(z, shell), z, shell)) ++zdecomp_bad;
        }
        r.set("seed", seed).set("instances", count);
        r.set("brute_mismatches", brute_mismatch).set("greedy_failures", greedy_bad);
        r.set("profile_failures", profile_bad).set("formula_failures", formula_bad);
        r.set("decompose3_failures", decomp_bad).set("quotient_failures", quotient_bad);
        r.set("zdecomp_failures", zdecomp_bad);
        r.fail_if(brute_mismatch + greedy_bad + profile_bad + formula_bad + decomp_bad + quotient_bad + zdecomp_bad != 0);
    });
}

}  // namespace subcoord::commands
