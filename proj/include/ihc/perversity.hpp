#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "ihc/constructors.hpp"
#include "ihc/error.hpp"
#include "ihc/topology/filtered_complex.hpp"

namespace ihc {

/// Integer function on the strata of a complex; zero on regular strata.
class Perversity {
public:
    explicit Perversity(FilteredComplex X) : X_(std::move(X)), values_(X_.strata().size(), 0) {}

    static Perversity zero(const FilteredComplex& X) { return Perversity(X); }

    /// t(S) = codim S - 2 on singular strata.
    static Perversity top(const FilteredComplex& X) {
        Perversity p(X);
        for (const auto& S : X.strata())
            if (!S.regular) p.values_[S.index] = S.codim - 2;
        return p;
    }

    /// seq[0] is the value on codimension 1, seq[k-1] on codimension k.
    static Perversity from_codim(const FilteredComplex& X, const std::vector<int>& seq, bool gm_check = false) {
        const int n = X.formal_dimension();
        if (static_cast<int>(seq.size()) < n)
            throw Error(ErrorKind::MissingCodim, "perversity needs values for codimensions 1.." + std::to_string(n) +
                                                     ", got " + std::to_string(seq.size()));
        if (gm_check) {
            // p(0) = p(1) = p(2) = 0 and p(i) <= p(i+1) <= p(i) + 1
            int prev = 0;
            for (std::size_t k = 1; k <= seq.size(); ++k) {
                const int v = seq[k - 1];
                if ((k <= 2 && v != 0) || v < prev || v > prev + 1)
                    throw Error(ErrorKind::BadParam, "sequence violates the growth law at codimension " + std::to_string(k));
                prev = v;
            }
        }
        Perversity p(X);
        for (const auto& S : X.strata())
            if (!S.regular) p.values_[S.index] = seq[static_cast<std::size_t>(S.codim - 1)];
        return p;
    }

    static Perversity from_strata(const FilteredComplex& X, const std::map<std::string, int>& by_name) {
        Perversity p(X);
        for (const auto& [name, v] : by_name) {
            auto idx = X.find_stratum(name);
            if (!idx) throw Error(ErrorKind::BadParam, "no stratum named '" + name + "'");
            p.set(*idx, v);
        }
        return p;
    }

    const FilteredComplex& complex() const { return X_; }
    int operator()(std::uint32_t stratum) const { return values_[stratum]; }
    const std::vector<int>& values() const { return values_; }

    void set(std::uint32_t stratum, int value) {
        if (X_.strata()[stratum].regular && value != 0)
            throw Error(ErrorKind::BadParam, "perversity must vanish on regular strata");
        values_[stratum] = value;
    }

    /// D p = t - p.
    Perversity complementary() const {
        Perversity q(X_);
        for (const auto& S : X_.strata())
            if (!S.regular) q.values_[S.index] = S.codim - 2 - values_[S.index];
        return q;
    }

    bool operator==(const Perversity& other) const { return X_ == other.X_ && values_ == other.values_; }

    std::string to_string() const {
        std::ostringstream out;
        out << "{";
        bool first = true;
        for (const auto& S : X_.strata()) {
            if (S.regular) continue;
            out << (first ? "" : ",") << S.name << ":" << values_[S.index];
            first = false;
        }
        out << "}";
        return out.str();
    }

private:
    FilteredComplex X_;
    std::vector<int> values_;
};

enum class PerversityOp { Add, Max, Leq };

namespace detail {

inline void require_same_complex(const Perversity& p, const Perversity& q) {
    if (!(p.complex() == q.complex())) throw Error(ErrorKind::ComplexMismatch, "perversities live on different complexes");
}

} // namespace detail

inline Perversity add(const Perversity& p, const Perversity& q) {
    detail::require_same_complex(p, q);
    Perversity r(p.complex());
    for (const auto& S : p.complex().strata())
        if (!S.regular) r.set(S.index, p(S.index) + q(S.index));
    return r;
}

inline Perversity max_of(const Perversity& p, const Perversity& q) {
    detail::require_same_complex(p, q);
    Perversity r(p.complex());
    for (const auto& S : p.complex().strata())
        if (!S.regular) r.set(S.index, std::max(p(S.index), q(S.index)));
    return r;
}

inline bool leq(const Perversity& p, const Perversity& q) {
    detail::require_same_complex(p, q);
    for (const auto& S : p.complex().strata())
        if (p(S.index) > q(S.index)) return false;
    return true;
}

inline std::variant<Perversity, bool> combine(const Perversity& p, const Perversity& q, PerversityOp op) {
    switch (op) {
    case PerversityOp::Add: return add(p, q);
    case PerversityOp::Max: return max_of(p, q);
    case PerversityOp::Leq: break;
    }
    return leq(p, q);
}

/// Transports p from the (single) input of a constructor to its output.
/// Strata not coming from the input (cone apex, join sphere) get `extra`.
inline Perversity induce(const Perversity& p, const Construction& c, int extra = 0) {
    if (c.sources.size() != 1 || !(c.sources[0] == p.complex()))
        throw Error(ErrorKind::NotAConstructorImage, "perversity is not defined on the constructor input");
    const FilteredComplex& X = c.result;
    std::vector<char> hit(X.strata().size(), 0);
    Perversity out(X);
    for (const auto& S : p.complex().strata()) {
        const VertexIndex v = *p.complex().find_vertex(S.name);
        const auto T = X.stratum_index(c.vertex_image[0][v]);
        hit[T] = 1;
        if (!X.strata()[T].regular) out.set(T, p(S.index));
    }
    for (const auto& T : X.strata())
        if (!hit[T.index] && !T.regular) out.set(T.index, extra);
    return out;
}

/// Pulls a perversity on a constructor output back to its input.
inline Perversity pullback(const Perversity& p, const Construction& c, std::size_t source = 0) {
    if (!(c.result == p.complex()) || source >= c.sources.size())
        throw Error(ErrorKind::NotAConstructorImage, "perversity is not defined on the constructor output");
    const FilteredComplex& L = c.sources[source];
    Perversity out(L);
    for (const auto& S : L.strata()) {
        if (S.regular) continue;
        const VertexIndex v = *L.find_vertex(S.name);
        out.set(S.index, p(c.result.stratum_index(c.vertex_image[source][v])));
    }
    return out;
}

/// Restriction to a complex whose vertices (by id and level) belong to p's complex.
inline Perversity restrict_to(const Perversity& p, const FilteredComplex& U) {
    const FilteredComplex& X = p.complex();
    if (U.formal_dimension() != X.formal_dimension())
        throw Error(ErrorKind::NotAConstructorImage, "subcomplex has a different formal dimension");
    Perversity out(U);
    for (const auto& S : U.strata()) {
        auto v = X.find_vertex(S.name);
        if (!v || X.vertex(*v).level != S.dim)
            throw Error(ErrorKind::NotAConstructorImage, "vertex '" + S.name + "' is not in the ambient complex");
        if (!S.regular) out.set(S.index, p(X.stratum_index(*v)));
    }
    return out;
}

/// CLI perversity syntax: zero | top | codim:a,b,... | strata:{id:val,...} | dual:<spec>
inline Perversity parse_perversity(const FilteredComplex& X, const std::string& text) {
    if (text == "zero") return Perversity::zero(X);
    if (text == "top") return Perversity::top(X);
    if (text.rfind("dual:", 0) == 0) return parse_perversity(X, text.substr(5)).complementary();
    auto parse_int = [&](const std::string& s) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            throw Error(ErrorKind::ParseError, "bad integer '" + s + "' in perversity '" + text + "'");
        }
        if (used != s.size()) throw Error(ErrorKind::ParseError, "bad integer '" + s + "' in perversity '" + text + "'");
        return v;
    };
    auto split = [](const std::string& s, char sep) {
        std::vector<std::string> parts;
        std::string cur;
        std::istringstream in(s);
        while (std::getline(in, cur, sep)) parts.push_back(cur);
        return parts;
    };
    if (text.rfind("codim:", 0) == 0) {
        std::vector<int> seq;
        for (const auto& part : split(text.substr(6), ',')) seq.push_back(parse_int(part));
        return Perversity::from_codim(X, seq);
    }
    if (text.rfind("strata:", 0) == 0) {
        std::string body = text.substr(7);
        if (body.size() < 2 || body.front() != '{' || body.back() != '}')
            throw Error(ErrorKind::ParseError, "expected strata:{id:value,...}");
        body = body.substr(1, body.size() - 2);
        std::map<std::string, int> values;
        if (!body.empty())
            for (const auto& item : split(body, ',')) {
                const auto colon = item.rfind(':');
                if (colon == std::string::npos) throw Error(ErrorKind::ParseError, "expected id:value in '" + item + "'");
                values[item.substr(0, colon)] = parse_int(item.substr(colon + 1));
            }
        return Perversity::from_strata(X, values);
    }
    throw Error(ErrorKind::ParseError, "unknown perversity '" + text + "'");
}

} // namespace ihc
