// Copyright (c) 2026 the k3fib authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#ifndef K3FIB_LATTICE_HPP
#define K3FIB_LATTICE_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "k3fib/rational.hpp"

namespace k3fib {

// ---------------------------------------------------------------------------
// ADE root lattice labels and Gram matrices (negative definite convention:
// -2 on the diagonal, +1 between adjacent nodes).

struct RootLabel {
    char family;  // 'A', 'D', 'E'
    int rank;

    RootLabel(char f, int r) : family(f), rank(r) {
        bool ok = (f == 'A' && r >= 1) || (f == 'D' && r >= 4) ||
                  (f == 'E' && r >= 6 && r <= 8);
        if (!ok) throw std::domain_error("RootLabel: invalid " + std::string(1, f) +
                                         std::to_string(r));
    }

    friend bool operator==(const RootLabel& a, const RootLabel& b) {
        return a.family == b.family && a.rank == b.rank;
    }
    friend bool operator<(const RootLabel& a, const RootLabel& b) {
        if (a.rank != b.rank) return a.rank < b.rank;
        return a.family < b.family;
    }
    std::string str() const { return std::string(1, family) + std::to_string(rank); }

    static RootLabel parse(std::string_view s) {
        if (s.size() < 2) throw std::runtime_error("bad root label: " + std::string(s));
        char f = s[0];
        int r = std::stoi(std::string(s.substr(1)));
        return RootLabel(f, r);
    }
};

/// A (possibly empty) multiset of root labels; rank-0 systems print as "0".
struct RootSystem {
    std::vector<RootLabel> labels;  // kept sorted

    RootSystem() = default;
    RootSystem(std::initializer_list<RootLabel> ls) : labels(ls) { sort(); }

    void add(const RootLabel& l) {
        labels.push_back(l);
        sort();
    }
    void remove_one(const RootLabel& l) {
        auto it = std::find(labels.begin(), labels.end(), l);
        if (it == labels.end()) throw std::domain_error("RootSystem: label not present");
        labels.erase(it);
    }
    void merge(const RootSystem& o) {
        labels.insert(labels.end(), o.labels.begin(), o.labels.end());
        sort();
    }
    int total_rank() const {
        int r = 0;
        for (auto& l : labels) r += l.rank;
        return r;
    }
    friend bool operator==(const RootSystem& a, const RootSystem& b) {
        return a.labels == b.labels;
    }
    friend bool operator!=(const RootSystem& a, const RootSystem& b) { return !(a == b); }

    /// Compact form, e.g. "A5^2 D10" or "0".
    std::string str() const {
        if (labels.empty()) return "0";
        std::ostringstream os;
        size_t k = 0;
        bool first = true;
        while (k < labels.size()) {
            size_t j = k;
            while (j < labels.size() && labels[j] == labels[k]) ++j;
            if (!first) os << " ";
            first = false;
            os << labels[k].str();
            if (j - k > 1) os << "^" << (j - k);
            k = j;
        }
        return os.str();
    }

    static RootSystem parse(std::string_view s) {
        RootSystem out;
        std::istringstream is{std::string(s)};
        std::string tok;
        while (is >> tok) {
            if (tok == "0") continue;
            size_t caret = tok.find('^');
            int count = 1;
            std::string base = tok;
            if (caret != std::string::npos) {
                count = std::stoi(tok.substr(caret + 1));
                base = tok.substr(0, caret);
            }
            RootLabel l = RootLabel::parse(base);
            for (int c = 0; c < count; ++c) out.labels.push_back(l);
        }
        out.sort();
        return out;
    }

  private:
    void sort() { std::sort(labels.begin(), labels.end()); }
};

using GramMatrix = std::vector<std::vector<int64_t>>;

/// Gram matrix from the Dynkin diagram adjacency.
inline GramMatrix gram(const RootLabel& l) {
    int n = l.rank;
    GramMatrix g(n, std::vector<int64_t>(n, 0));
    for (int k = 0; k < n; ++k) g[k][k] = -2;
    auto link = [&](int a, int b) { g[a][b] = g[b][a] = 1; };
    if (l.family == 'A') {
        for (int k = 0; k + 1 < n; ++k) link(k, k + 1);
    } else if (l.family == 'D') {
        // path 0-1-...-(n-2), with node n-1 attached to n-3
        for (int k = 0; k + 2 < n; ++k) link(k, k + 1);
        link(n - 3, n - 1);
    } else {
        // E_n: path 0-1-...-(n-2), with node n-1 attached to node 2
        for (int k = 0; k + 2 < n; ++k) link(k, k + 1);
        link(2, n - 1);
    }
    return g;
}

/// Exact determinant by Bareiss fraction-free elimination.
inline int64_t det_bareiss(GramMatrix m) {
    int n = static_cast<int>(m.size());
    if (n == 0) return 1;
    int64_t prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            int p = -1;
            for (int r = k + 1; r < n; ++r)
                if (m[r][k] != 0) {
                    p = r;
                    break;
                }
            if (p < 0) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (int r = k + 1; r < n; ++r) {
            for (int c = k + 1; c < n; ++c) {
                int64_t num = m[r][c] * m[k][k] - m[r][k] * m[k][c];
                if (num % prev != 0)
                    throw std::logic_error("det_bareiss: inexact division");
                m[r][c] = num / prev;
            }
            m[r][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

inline int64_t gram_det(const RootLabel& l) { return det_bareiss(gram(l)); }

/// Closed-form determinant of the negative definite ADE lattices.
inline int64_t gram_det_formula(const RootLabel& l) {
    int n = l.rank;
    int64_t sign = (n % 2 == 0) ? 1 : -1;
    if (l.family == 'A') return sign * (n + 1);
    if (l.family == 'D') return sign * 4;
    if (n == 6) return 3;
    if (n == 7) return -2;
    return 1;  // E8
}

// ---------------------------------------------------------------------------
// Height-correction table.  Component labels follow the fiber conventions:
// the A_{n-1} components are numbered cyclically 0..n-1 with 0 the identity;
// at D and E fibers only the simple components are named.

struct CompId {
    enum Kind : uint8_t {
        Identity,
        Cyclic,  // index in 1..n-1 (A_{n-1} fiber)
        Near,    // D-type near component
        Far,     // D-type far component, index 0 or 1 (or 0..2 for D4)
        Simple,  // E6/E7 and IV/III non-identity simple component, index 0/1
        Trunk,   // multiplicity-2 internal component (never met by sections)
    } kind = Identity;
    int index = 0;

    static CompId identity() { return {Identity, 0}; }
    bool is_identity() const { return kind == Identity; }
    friend bool operator==(const CompId& a, const CompId& b) {
        return a.kind == b.kind && a.index == b.index;
    }
    std::string str() const {
        switch (kind) {
            case Identity: return "id";
            case Cyclic: return "cyc" + std::to_string(index);
            case Near: return "near";
            case Far: return "far" + std::to_string(index);
            case Simple: return "simple" + std::to_string(index);
            case Trunk: return "trunk" + std::to_string(index);
        }
        return "?";
    }
};

/// Local correction contr(P,Q) for sections through components i, j of the
/// fiber with root lattice `label`.  For A_{n-1} the cyclic indices matter;
/// for D_{m} = D_{n+4} the near/far split matters; E6 distinguishes its two
/// simple non-identity components, E7 has one, E8 none.
inline Rational contribution(const RootLabel& label, const CompId& i, const CompId& j) {
    if (i.is_identity() || j.is_identity()) return Rational(0);
    if (i.kind == CompId::Trunk || j.kind == CompId::Trunk)
        throw std::domain_error("contribution: sections cannot meet multiplicity-2 components");
    if (label.family == 'A') {
        int n = label.rank + 1;  // A_{n-1} fiber has n components
        // type III and IV fibers carry A1/A2 labels with Simple-tagged
        // components; their cyclic index is the branch number plus one
        int a = (i.kind == CompId::Simple) ? i.index + 1 : i.index;
        int b = (j.kind == CompId::Simple) ? j.index + 1 : j.index;
        if (a < 1 || a > n - 1 || b < 1 || b > n - 1)
            throw std::domain_error("contribution: bad cyclic index");
        if (a > b) std::swap(a, b);
        if (a == b) return Rational(static_cast<int64_t>(a) * (n - a), n);
        return Rational(static_cast<int64_t>(a) * (n - b), n);
    }
    if (label.family == 'D') {
        int n = label.rank - 4;  // D_{n+4}
        bool inear = i.kind == CompId::Near, jnear = j.kind == CompId::Near;
        if (inear && jnear) return Rational(1);
        if (inear || jnear) return Rational(1, 2);
        // both far
        if (i.index == j.index) return Rational(1) + Rational(n, 4);
        return Rational(1, 2) + Rational(n, 4);
    }
    if (label.rank == 6) {
        if (i.index == j.index) return Rational(4, 3);
        return Rational(2, 3);
    }
    if (label.rank == 7) return Rational(3, 2);
    throw std::domain_error("contribution: E8 has no non-identity simple component");
}

// ---------------------------------------------------------------------------
// Orthogonal-complement tables for one and two copies of A2 inside an ADE
// root lattice.  Returned values are the root systems of the complements;
// nullopt means the sublattice does not embed.

inline std::optional<RootSystem> a2_complement(const RootLabel& l) {
    if (l.family == 'A') {
        if (l.rank < 2) return std::nullopt;
        if (l.rank <= 3) return RootSystem{};
        return RootSystem{RootLabel('A', l.rank - 3)};
    }
    if (l.family == 'D') {
        if (l.rank == 4) return RootSystem{};
        if (l.rank == 5) return RootSystem{RootLabel('A', 1), RootLabel('A', 1)};
        if (l.rank == 6) return RootSystem{RootLabel('A', 3)};
        return RootSystem{RootLabel('D', l.rank - 3)};
    }
    if (l.rank == 6) return RootSystem{RootLabel('A', 2), RootLabel('A', 2)};
    if (l.rank == 7) return RootSystem{RootLabel('A', 5)};
    return RootSystem{RootLabel('E', 6)};
}

inline std::optional<RootSystem> a2sq_complement(const RootLabel& l) {
    if (l.family == 'A') {
        if (l.rank < 5) return std::nullopt;
        if (l.rank <= 6) return RootSystem{};
        return RootSystem{RootLabel('A', l.rank - 6)};
    }
    if (l.family == 'D') {
        if (l.rank < 6) return std::nullopt;
        if (l.rank == 6 || l.rank == 7) return RootSystem{};
        if (l.rank == 8) return RootSystem{RootLabel('A', 1), RootLabel('A', 1)};
        if (l.rank == 9) return RootSystem{RootLabel('A', 3)};
        return RootSystem{RootLabel('D', l.rank - 6)};
    }
    if (l.rank == 6) return RootSystem{RootLabel('A', 2)};
    if (l.rank == 7) return RootSystem{RootLabel('A', 2)};
    return RootSystem{RootLabel('A', 2), RootLabel('A', 2)};
}

/// The 23 full-rank root systems of Niemeier lattices (the Leech lattice,
/// having no roots, is omitted).
inline std::vector<RootSystem> niemeier_roots() {
    static const char* table[] = {
        "A1^24",      "A2^12",    "A3^8",      "A4^6",    "A5^4 D4",
        "D4^6",       "A6^4",     "A7^2 D5^2", "A8^3",    "A9^2 D6",
        "D6^4",       "E6^4",     "A11 D7 E6", "A12^2",   "D8^3",
        "A15 D9",     "A17 E7",   "D10 E7^2",  "D12^2",   "A24",
        "D16 E8",     "E8^3",     "D24",
    };
    std::vector<RootSystem> out;
    for (auto* s : table) out.push_back(RootSystem::parse(s));
    return out;
}

/// One row of the fibration enumeration: a Niemeier root system, the slots
/// the A2 copies were extracted from, the resulting root system, and the
/// Mordell-Weil rank 20 - rank(roots).
struct ExtractionRow {
    RootSystem source;
    std::string extraction;  // "m:" or "mn:" tag over distinct label slots
    RootSystem roots;
    int mw_rank;
};

/// All ways of extracting A2+A2 from each Niemeier root system, either both
/// copies from a single factor or one copy from each of two factors.  The
/// resulting list reproduces the catalog of possible fibration lattices;
/// its length is the theorem's count.
inline std::vector<ExtractionRow> enumerate_fibration_lattices() {
    std::vector<ExtractionRow> out;
    for (const RootSystem& N : niemeier_roots()) {
        // distinct label types with multiplicities, in sorted order
        std::vector<std::pair<RootLabel, int>> types;
        for (auto& l : N.labels) {
            if (!types.empty() && types.back().first == l)
                ++types.back().second;
            else
                types.push_back({l, 1});
        }
        auto slot_no = [&](size_t idx) { return std::to_string(idx + 1); };
        // both copies of A2 from one factor
        for (size_t a = 0; a < types.size(); ++a) {
            auto comp = a2sq_complement(types[a].first);
            if (!comp) continue;
            RootSystem r = N;
            r.remove_one(types[a].first);
            r.merge(*comp);
            out.push_back({N, slot_no(a) + ":", r, 20 - r.total_rank()});
        }
        // one copy from each of two factors (same type needs multiplicity 2)
        for (size_t a = 0; a < types.size(); ++a) {
            auto ca = a2_complement(types[a].first);
            if (!ca) continue;
            for (size_t b = a; b < types.size(); ++b) {
                auto cb = a2_complement(types[b].first);
                if (!cb) continue;
                if (a == b && types[a].second < 2) continue;
                RootSystem r = N;
                r.remove_one(types[a].first);
                r.remove_one(types[b].first);
                r.merge(*ca);
                r.merge(*cb);
                out.push_back({N, slot_no(a) + slot_no(b) + ":", r, 20 - r.total_rank()});
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Shioda-Tate bookkeeping on a fiber configuration summary.  Callers pass
// the multiset of root labels of the reducible fibers.

struct TrivialLattice {
    int rank;
    int64_t disc;  // signed; the hyperbolic plane contributes -1
};

inline TrivialLattice trivial_lattice_of(const std::vector<RootLabel>& fibers) {
    TrivialLattice t{2, -1};
    for (auto& l : fibers) {
        t.rank += l.rank;
        t.disc *= gram_det_formula(l);
    }
    return t;
}

inline int shioda_tate_mw_rank(const std::vector<RootLabel>& fibers, int rho = 22) {
    int r = rho - 2;
    for (auto& l : fibers) r -= l.rank;
    if (r < 0) throw std::domain_error("shioda_tate_mw_rank: configuration exceeds rho");
    return r;
}

}  // namespace k3fib

#endif
