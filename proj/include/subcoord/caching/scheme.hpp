#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "../rational.hpp"
#include "../subspace.hpp"

namespace subcoord::caching {

/// d_1..d_K, each a 1-based document index.
using Demand = std::vector<int>;

/// split[i][k] is the k-th block (0-based) of document i+1; three blocks per document.
using Split = std::vector<std::vector<Subspace>>;

inline std::string demand_string(const Demand& d) {
    std::string s;
    bool wide = false;
    for (int x : d) wide = wide || x > 9;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (wide && i) s += ' ';
        s += std::to_string(d[i]);
    }
    return s;
}

/// Every demand vector in [N]^K in lexicographic order.
inline std::vector<Demand> all_demands(int n_docs, int k_users) {
    std::vector<Demand> out;
    Demand d(static_cast<std::size_t>(k_users), 1);
    while (true) {
        out.push_back(d);
        int i = k_users - 1;
        while (i >= 0 && d[static_cast<std::size_t>(i)] == n_docs) d[static_cast<std::size_t>(i--)] = 1;
        if (i < 0) break;
        ++d[static_cast<std::size_t>(i)];
    }
    return out;
}

inline bool distinct_entries(const Demand& d) {
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j)
            if (d[i] == d[j]) return false;
    return true;
}

/// A linear caching scheme. Bit f of document i sits at coordinate (i-1)F + f.
class CachingScheme {
public:
    CachingScheme() = default;
    CachingScheme(Field field, int n_docs, int k_users, int f_bits)
        : field_(field), n_(n_docs), k_(k_users), f_(f_bits) {
        if (n_docs < 1 || k_users < 1 || f_bits < 1)
            throw ContractViolation("scheme needs N, K, F >= 1");
        caches_.assign(static_cast<std::size_t>(k_users), Subspace::zero(field, ambient_dim()));
    }

    Field field() const { return field_; }
    int N() const { return n_; }
    int K() const { return k_; }
    int F() const { return f_; }
    std::size_t ambient_dim() const { return static_cast<std::size_t>(n_) * static_cast<std::size_t>(f_); }

    std::size_t coord(int doc, int bit) const {
        check_doc(doc);
        if (bit < 0 || bit >= f_) throw ContractViolation("bit index " + std::to_string(bit) + " out of range");
        return static_cast<std::size_t>(doc - 1) * static_cast<std::size_t>(f_) + static_cast<std::size_t>(bit);
    }
    Vector bit(int doc, int b) const { return Vector::unit(field_, ambient_dim(), coord(doc, b)); }

    /// W_i, the i-th block of F coordinates.
    Subspace doc(int i) const {
        check_doc(i);
        std::vector<std::size_t> idx;
        for (int b = 0; b < f_; ++b) idx.push_back(coord(i, b));
        return Subspace::coordinate(field_, ambient_dim(), idx);
    }
    std::vector<Subspace> docs() const {
        std::vector<Subspace> out;
        for (int i = 1; i <= n_; ++i) out.push_back(doc(i));
        return out;
    }

    const Subspace& cache(int j) const {
        check_user(j);
        return caches_[static_cast<std::size_t>(j - 1)];
    }
    void set_cache(int j, Subspace z) {
        check_user(j);
        check_ambient(z);
        caches_[static_cast<std::size_t>(j - 1)] = std::move(z);
    }
    const std::vector<Subspace>& caches() const { return caches_; }

    const std::map<Demand, Subspace>& broadcasts() const { return broadcasts_; }
    bool has_broadcast(const Demand& d) const { return broadcasts_.count(d) != 0; }
    const Subspace& broadcast(const Demand& d) const {
        auto it = broadcasts_.find(d);
        if (it == broadcasts_.end()) throw ContractViolation("no broadcast for demand " + demand_string(d));
        return it->second;
    }
    void set_broadcast(const Demand& d, Subspace x) {
        check_demand(d);
        check_ambient(x);
        broadcasts_[d] = std::move(x);
    }
    void erase_broadcast(const Demand& d) { broadcasts_.erase(d); }

    bool complete() const {
        return broadcasts_.size() == all_demands(n_, k_).size();
    }
    std::vector<Demand> missing_demands() const {
        std::vector<Demand> out;
        for (const Demand& d : all_demands(n_, k_))
            if (!has_broadcast(d)) out.push_back(d);
        return out;
    }

    const std::optional<Split>& split() const { return split_; }
    void set_split(Split s) {
        validate_split(s);
        split_ = std::move(s);
    }
    void clear_split() { split_.reset(); }

    /// The supplied split, or the canonical one (consecutive thirds of each
    /// document) when F is divisible by 3.
    std::optional<Split> effective_split() const {
        if (split_) return split_;
        if (f_ % 3 != 0) return std::nullopt;
        return canonical_split();
    }

    Split canonical_split() const {
        if (f_ % 3 != 0) throw ContractViolation("canonical split needs F divisible by 3");
        const int w = f_ / 3;
        Split s;
        for (int i = 1; i <= n_; ++i) {
            std::vector<Subspace> blocks;
            for (int k = 0; k < 3; ++k) {
                std::vector<std::size_t> idx;
                for (int b = 0; b < w; ++b) idx.push_back(coord(i, k * w + b));
                blocks.push_back(Subspace::coordinate(field_, ambient_dim(), idx));
            }
            s.push_back(std::move(blocks));
        }
        return s;
    }

    void validate_split(const Split& s) const {
        if (f_ % 3 != 0) throw ContractViolation("a split needs F divisible by 3");
        if (s.size() != static_cast<std::size_t>(n_))
            throw ContractViolation("split must list blocks for every document");
        for (int i = 1; i <= n_; ++i) {
            const auto& blocks = s[static_cast<std::size_t>(i - 1)];
            if (blocks.size() != 3) throw ContractViolation("split must have three blocks per document");
            const Subspace w = doc(i);
            for (const Subspace& b : blocks) {
                check_ambient(b);
                if (b.dim() != static_cast<std::size_t>(f_ / 3) || !subspace_contains(w, b))
                    throw ContractViolation("split block of document " + std::to_string(i) +
                                            " is not an F/3-dimensional subspace of it");
            }
            if (sum(blocks, field_, ambient_dim()).dim() != static_cast<std::size_t>(f_))
                throw ContractViolation("split blocks of document " + std::to_string(i) +
                                        " do not decompose it");
        }
    }

    void check_doc(int i) const {
        if (i < 1 || i > n_) throw ContractViolation("document index " + std::to_string(i) + " out of range");
    }
    void check_user(int j) const {
        if (j < 1 || j > k_) throw ContractViolation("user index " + std::to_string(j) + " out of range");
    }
    void check_demand(const Demand& d) const {
        if (d.size() != static_cast<std::size_t>(k_))
            throw ContractViolation("demand must have K = " + std::to_string(k_) + " entries");
        for (int x : d) check_doc(x);
    }
    void check_ambient(const Subspace& s) const {
        if (s.ambient_dim() != ambient_dim() || !(s.field() == field_))
            throw ContractViolation("subspace does not live in GF(p)^(N*F)");
    }

private:
    Field field_;
    int n_ = 0, k_ = 0, f_ = 0;
    std::vector<Subspace> caches_;
    std::map<Demand, Subspace> broadcasts_;
    std::optional<Split> split_;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

inline std::vector<std::string> split_words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

inline int parse_int(const std::string& s, std::size_t line) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(line, "expected a non-negative integer, got '" + s + "'");
    try {
        return std::stoi(s);
    } catch (const std::exception&) {
        throw ParseError(line, "integer out of range: '" + s + "'");
    }
}

/// Reads "key=value" headers in a fixed order, skipping blank and comment lines.
class LineReader {
public:
    explicit LineReader(const std::string& text) {
        std::istringstream in(text);
        for (std::string l; std::getline(in, l);) lines_.push_back(l);
    }
    std::size_t size() const { return lines_.size(); }
    const std::string& operator[](std::size_t i) const { return lines_[i]; }

    int header(std::size_t& pos, const std::string& key) const {
        while (pos < lines_.size()) {
            const std::string t = trim(lines_[pos]);
            if (t.empty() || t[0] == '#') {
                ++pos;
                continue;
            }
            const auto eq = t.find('=');
            if (eq == std::string::npos || trim(t.substr(0, eq)) != key)
                throw ParseError(pos + 1, "expected header '" + key + "=<integer>'");
            const int v = parse_int(trim(t.substr(eq + 1)), pos + 1);
            ++pos;
            return v;
        }
        throw ParseError(lines_.size(), "missing header '" + key + "='");
    }

private:
    std::vector<std::string> lines_;
};

struct RawSection {
    std::vector<std::string> head;
    std::size_t line = 0;
    std::vector<std::pair<std::size_t, std::string>> rows;
};

/// Sections begin with a header line whose first word is one of `kinds`; each
/// section ends at a blank line or the next header.
inline std::vector<RawSection> read_sections(const LineReader& r, std::size_t pos, const std::string& kinds) {
    std::vector<RawSection> out;
    bool open = false;
    for (; pos < r.size(); ++pos) {
        const std::string t = trim(r[pos]);
        if (t.empty()) {
            open = false;
            continue;
        }
        if (t[0] == '#') continue;
        const auto words = split_words(t);
        if (words[0].size() == 1 && kinds.find(words[0][0]) != std::string::npos) {
            out.push_back({words, pos + 1, {}});
            open = true;
            continue;
        }
        if (!open) throw ParseError(pos + 1, "generator line outside of a section");
        out.back().rows.emplace_back(pos + 1, t);
    }
    return out;
}

inline Subspace parse_generators(const RawSection& sec, Field f, std::size_t n) {
    std::vector<Vector> gens;
    for (const auto& [line, text] : sec.rows) {
        Vector v;
        try {
            v = Vector::parse(f, text);
        } catch (const ContractViolation& e) {
            throw ParseError(line, e.what());
        }
        if (v.size() != n)
            throw ParseError(line, "generator has " + std::to_string(v.size()) + " entries, expected " +
                                       std::to_string(n));
        gens.push_back(std::move(v));
    }
    return Subspace::span(f, n, gens);
}

inline Field parse_field(int p, std::size_t line) {
    try {
        return Field(static_cast<unsigned>(p));
    } catch (const ContractViolation& e) {
        throw ParseError(line, e.what());
    }
}

}  // namespace detail

/// Parses the text scheme format:
///   field=2
///   N=3
///   K=3
///   F=6
///   Z 1
///   <N*F digits per generator>
///   X 1 2 3
///   ...
///   S 1 2      (optional: block 2 of document 1 for separated-scheme audits)
inline CachingScheme parse_scheme(const std::string& text) {
    detail::LineReader r(text);
    std::size_t pos = 0;
    const int p = r.header(pos, "field");
    const Field f = detail::parse_field(p, pos);
    const int n = r.header(pos, "N");
    const int k = r.header(pos, "K");
    const int fb = r.header(pos, "F");
    if (n < 1 || k < 1 || fb < 1) throw ParseError(pos, "N, K and F must be positive");
    CachingScheme s(f, n, k, fb);
    const std::size_t amb = s.ambient_dim();

    std::map<std::pair<int, int>, Subspace> split_blocks;
    std::size_t first_split_line = 0;
    std::map<std::string, std::size_t> seen;
    for (const auto& sec : detail::read_sections(r, pos, "ZXS")) {
        const std::string key = [&] {
            std::string kk;
            for (const auto& w : sec.head) kk += w + " ";
            return kk;
        }();
        if (seen.count(key))
            throw ParseError(sec.line, "duplicate section '" + detail::trim(key) + "' (first at line " +
                                           std::to_string(seen[key]) + ")");
        seen[key] = sec.line;
        const Subspace gen = detail::parse_generators(sec, f, amb);
        const char kind = sec.head[0][0];
        if (kind == 'Z') {
            if (sec.head.size() != 2) throw ParseError(sec.line, "expected 'Z <user>'");
            const int j = detail::parse_int(sec.head[1], sec.line);
            if (j < 1 || j > k) throw ParseError(sec.line, "user index out of range 1.." + std::to_string(k));
            s.set_cache(j, gen);
        } else if (kind == 'X') {
            if (sec.head.size() != static_cast<std::size_t>(k) + 1)
                throw ParseError(sec.line, "expected 'X' followed by " + std::to_string(k) + " document indices");
            Demand d;
            for (std::size_t i = 1; i < sec.head.size(); ++i) {
                const int di = detail::parse_int(sec.head[i], sec.line);
                if (di < 1 || di > n)
                    throw ParseError(sec.line, "demanded document out of range 1.." + std::to_string(n));
                d.push_back(di);
            }
            s.set_broadcast(d, gen);
        } else {
            if (sec.head.size() != 3) throw ParseError(sec.line, "expected 'S <document> <block>'");
            const int i = detail::parse_int(sec.head[1], sec.line);
            const int b = detail::parse_int(sec.head[2], sec.line);
            if (i < 1 || i > n || b < 1 || b > 3)
                throw ParseError(sec.line, "split section indices out of range");
            if (!first_split_line) first_split_line = sec.line;
            split_blocks[{i, b}] = gen;
        }
    }
    if (!split_blocks.empty()) {
        if (split_blocks.size() != static_cast<std::size_t>(3 * n))
            throw ParseError(first_split_line, "split sections must cover all three blocks of every document");
        Split sp;
        for (int i = 1; i <= n; ++i) {
            std::vector<Subspace> blocks;
            for (int b = 1; b <= 3; ++b) blocks.push_back(split_blocks.at({i, b}));
            sp.push_back(std::move(blocks));
        }
        try {
            s.set_split(std::move(sp));
        } catch (const ContractViolation& e) {
            throw ParseError(first_split_line, e.what());
        }
    }
    return s;
}

inline std::string serialize_scheme(const CachingScheme& s) {
    std::ostringstream out;
    out << "field=" << s.field().p() << "\nN=" << s.N() << "\nK=" << s.K() << "\nF=" << s.F() << "\n";
    auto section = [&](const std::string& head, const Subspace& sub) {
        out << "\n" << head << "\n";
        for (const Vector& v : sub.basis_vectors()) out << v.to_string() << "\n";
    };
    for (int j = 1; j <= s.K(); ++j) section("Z " + std::to_string(j), s.cache(j));
    for (const auto& [d, x] : s.broadcasts()) {
        std::string head = "X";
        for (int di : d) head += " " + std::to_string(di);
        section(head, x);
    }
    if (s.split())
        for (int i = 1; i <= s.N(); ++i)
            for (int b = 1; b <= 3; ++b)
                section("S " + std::to_string(i) + " " + std::to_string(b),
                        (*s.split())[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(b - 1)]);
    return out.str();
}

/// Family files: `field=<p>`, `ambient=<n>`, then `A <i>` sections of generators.
inline SubspaceFamily parse_family(const std::string& text) {
    detail::LineReader r(text);
    std::size_t pos = 0;
    const int p = r.header(pos, "field");
    const Field f = detail::parse_field(p, pos);
    const int n = r.header(pos, "ambient");
    std::map<int, Subspace> members;
    std::map<int, std::size_t> seen;
    for (const auto& sec : detail::read_sections(r, pos, "A")) {
        if (sec.head.size() != 2) throw ParseError(sec.line, "expected 'A <index>'");
        const int i = detail::parse_int(sec.head[1], sec.line);
        if (i < 1) throw ParseError(sec.line, "member indices start at 1");
        if (seen.count(i))
            throw ParseError(sec.line, "duplicate section 'A " + std::to_string(i) + "' (first at line " +
                                           std::to_string(seen[i]) + ")");
        seen[i] = sec.line;
        members[i] = detail::parse_generators(sec, f, static_cast<std::size_t>(n));
    }
    if (members.empty()) throw ParseError(r.size(), "family file has no 'A <i>' sections");
    std::vector<Subspace> out;
    for (int i = 1; i <= members.rbegin()->first; ++i) {
        auto it = members.find(i);
        out.push_back(it == members.end() ? Subspace::zero(f, static_cast<std::size_t>(n)) : it->second);
    }
    return SubspaceFamily(std::move(out));
}

inline std::string serialize_family(const SubspaceFamily& fam) {
    std::ostringstream out;
    out << "field=" << fam.field().p() << "\nambient=" << fam.ambient_dim() << "\n";
    for (std::size_t i = 0; i < fam.size(); ++i) {
        out << "\nA " << i + 1 << "\n";
        for (const Vector& v : fam[i].basis_vectors()) out << v.to_string() << "\n";
    }
    return out.str();
}

}  // namespace subcoord::caching
