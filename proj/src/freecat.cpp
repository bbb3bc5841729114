#include "trackalg/freecat.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace trackalg {

int Graph::vertex_index(const std::string& name) const {
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == name) return static_cast<int>(i);
    throw InputError("unknown vertex '" + name + "'");
}

void Graph::validate() const {
    std::set<std::string> seen;
    for (const auto& e : edges) {
        if (e.src < 0 || e.src >= static_cast<int>(vertices.size()) || e.dst < 0 ||
            e.dst >= static_cast<int>(vertices.size()))
            throw InputError("edge '" + e.id + "' has a missing endpoint");
        if (!seen.insert(e.id).second) throw InputError("duplicate edge id '" + e.id + "'");
    }
}

Word id_word(int object) { return Word{object, object, {}}; }

Word edge_word(const Graph& g, int edge) {
    const GraphEdge& e = g.edges.at(static_cast<size_t>(edge));
    return Word{e.src, e.dst, {edge}};
}

Word concat(const Word& u, const Word& w) {
    if (w.dst != u.src)
        throw ComposabilityError("words not composable: inner ends at object " +
                                 std::to_string(w.dst) + ", outer starts at " +
                                 std::to_string(u.src));
    Word r{w.src, u.dst, w.edges};
    r.edges.insert(r.edges.end(), u.edges.begin(), u.edges.end());
    return r;
}

bool word_less(const Word& a, const Word& b) {
    if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
    if (a.edges != b.edges) return a.edges < b.edges;
    return std::tie(a.src, a.dst) < std::tie(b.src, b.dst);
}

LinComb zero_comb(const Ring& r, int src, int dst) { return LinComb{r, src, dst, {}}; }

LinComb word_comb(const Ring& r, const Word& w, int64_t coeff) {
    return normalize(LinComb{r, w.src, w.dst, {{coeff, w}}});
}

LinComb normalize(LinComb c) {
    std::sort(c.terms.begin(), c.terms.end(),
              [](const auto& a, const auto& b) { return word_less(a.second, b.second); });
    std::vector<std::pair<int64_t, Word>> out;
    for (auto& [coeff, w] : c.terms) {
        if (w.src != c.src || w.dst != c.dst)
            throw InputError("linear combination mixes different hom pairs");
        if (!out.empty() && out.back().second == w)
            out.back().first = checked_add(out.back().first, coeff);
        else
            out.push_back({coeff, w});
    }
    std::vector<std::pair<int64_t, Word>> reduced;
    for (auto& [coeff, w] : out) {
        int64_t cr = c.ring.reduce(coeff);
        if (cr != 0) reduced.push_back({cr, w});
    }
    c.terms = std::move(reduced);
    return c;
}

LinComb add(const LinComb& a, const LinComb& b) {
    if (!(a.ring == b.ring) || a.src != b.src || a.dst != b.dst)
        throw InputError("linear combination addition mismatch");
    LinComb r = a;
    r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
    return normalize(std::move(r));
}

LinComb negate(const LinComb& a) { return scale_comb(-1, a); }

LinComb scale_comb(int64_t c, const LinComb& a) {
    LinComb r = a;
    for (auto& [coeff, w] : r.terms) coeff = checked_mul(coeff, c);
    return normalize(std::move(r));
}

LinComb mul(const LinComb& a, const LinComb& b) {
    if (!(a.ring == b.ring)) throw InputError("linear combination product mismatch");
    LinComb r = zero_comb(a.ring, b.src, a.dst);
    for (const auto& [ca, wa] : a.terms)
        for (const auto& [cb, wb] : b.terms)
            r.terms.push_back({checked_mul(ca, cb), concat(wa, wb)});
    return normalize(std::move(r));
}

std::string LinComb::to_string(const Graph& g) const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [c, w] : terms) {
        if (!first) os << " + ";
        first = false;
        os << c << "*";
        if (w.is_identity())
            os << "1_" << g.vertices.at(static_cast<size_t>(w.src));
        else {
            for (size_t i = w.edges.size(); i-- > 0;) {
                os << g.edges.at(static_cast<size_t>(w.edges[i])).id;
                if (i) os << ".";
            }
        }
    }
    return os.str();
}

std::vector<Word> words_between(const Graph& g, int src, int dst, size_t max_len) {
    std::vector<Word> out;
    std::vector<Word> layer;
    for (size_t v = 0; v < g.vertices.size(); ++v) layer.push_back(id_word(static_cast<int>(v)));
    for (const Word& w : layer)
        if (w.src == src && w.dst == dst) out.push_back(w);
    for (size_t len = 1; len <= max_len; ++len) {
        std::vector<Word> next;
        for (const Word& w : layer)
            for (size_t e = 0; e < g.edges.size(); ++e)
                if (g.edges[e].src == w.dst) {
                    Word ext = concat(edge_word(g, static_cast<int>(e)), w);
                    next.push_back(ext);
                    if (ext.src == src && ext.dst == dst) out.push_back(ext);
                }
        layer = std::move(next);
        if (layer.empty()) break;
    }
    std::sort(out.begin(), out.end(), word_less);
    return out;
}

namespace {

// additive closure of a set of classes inside a finite group, carrying one
// representative combination per reached class
struct SubgroupSet {
    const FinAbGroup* g;
    std::map<Elem, LinComb> reached;

    SubgroupSet(const FinAbGroup& grp, LinComb zero_rep) : g(&grp) {
        reached.emplace(grp.zero(), std::move(zero_rep));
    }

    bool insert_closed(const Elem& e, const LinComb& rep, uint64_t budget) {
        if (reached.count(e)) return false;
        std::vector<std::pair<Elem, LinComb>> fresh{{e, rep}};
        while (!fresh.empty()) {
            auto [cur, w] = fresh.back();
            fresh.pop_back();
            if (!reached.emplace(cur, w).second) continue;
            if (reached.size() > budget)
                throw EnumerationLimitError("class budget exhausted during saturation");
            std::vector<std::pair<Elem, LinComb>> snapshot(reached.begin(), reached.end());
            for (const auto& [other, wo] : snapshot) {
                Elem s = g->add(cur, other);
                if (!reached.count(s)) fresh.push_back({s, add(w, wo)});
            }
        }
        return true;
    }
};

} // namespace

GeneratingVerdict check_generating(const TrackCategory& T, const HomotopyCategory& hc,
                                   const Graph& g, const std::vector<Elem>& h_edges,
                                   const Ring& ring, size_t max_word_len,
                                   uint64_t class_budget) {
    GeneratingVerdict v;
    g.validate();
    if (h_edges.size() != g.edges.size())
        throw InputError("need one H0 class per edge");
    if (g.vertices.size() != T.object_count())
        throw InputError("generating graph must share the instance's objects");

    int n = static_cast<int>(T.object_count());
    std::map<std::pair<int, int>, SubgroupSet> span;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            span.emplace(std::make_pair(a, b),
                         SubgroupSet(hc.at(a, b).h0.group, zero_comb(ring, a, b)));

    // identities first, then words layer by layer, closing additively
    try {
        for (int a = 0; a < n; ++a) {
            Elem cls = hc.unit_class(a);
            span.at({a, a}).insert_closed(cls, word_comb(ring, id_word(a)), class_budget);
        }
        struct Path {
            Word w;
            Elem cls;
        };
        std::vector<Path> layer;
        for (size_t e = 0; e < g.edges.size(); ++e) {
            Path p{edge_word(g, static_cast<int>(e)), h_edges[e]};
            span.at({p.w.src, p.w.dst}).insert_closed(p.cls, word_comb(ring, p.w), class_budget);
            layer.push_back(std::move(p));
        }
        bool grew = true;
        size_t len = 1;
        while (grew && len < max_word_len) {
            grew = false;
            std::vector<Path> next;
            for (const Path& p : layer)
                for (size_t e = 0; e < g.edges.size(); ++e) {
                    if (g.edges[e].src != p.w.dst) continue;
                    Path q{concat(edge_word(g, static_cast<int>(e)), p.w),
                           hc.compose(p.w.src, p.w.dst, g.edges[e].dst, h_edges[e], p.cls)};
                    if (span.at({q.w.src, q.w.dst}).insert_closed(q.cls, word_comb(ring, q.w),
                                                                  class_budget))
                        grew = true;
                    next.push_back(std::move(q));
                }
            layer = std::move(next);
            ++len;
        }
        if (grew) {
            // the span was still growing when the length bound hit
            v.state = GeneratingVerdict::State::Indeterminate;
            return v;
        }
    } catch (const EnumerationLimitError&) {
        v.state = GeneratingVerdict::State::Indeterminate;
        return v;
    }

    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const FinAbGroup& h0 = hc.at(a, b).h0.group;
            uint64_t want = h0.order_bounded(class_budget);
            if (span.at({a, b}).reached.size() != want) {
                v.state = GeneratingVerdict::State::NotGenerating;
                v.src = a;
                v.dst = b;
                for_each_element(h0, [&](const Elem& cls) {
                    if (!v.unreached.empty()) return;
                    if (!span.at({a, b}).reached.count(cls)) v.unreached = cls;
                });
                return v;
            }
        }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (const auto& [cls, rep] : span.at({a, b}).reached)
                v.witnesses.emplace(std::make_tuple(a, b, hc.at(a, b).h0.group.encode(cls)),
                                    rep);
    v.state = GeneratingVerdict::State::Generating;
    return v;
}

MatrixGraphResult matrix_graph(const GradedPresentation& alg,
                               const std::vector<std::vector<int>>& objects,
                               uint64_t max_edges) {
    MatrixGraphResult res;
    for (const auto& tuple : objects) {
        std::ostringstream os;
        os << "(";
        for (size_t i = 0; i < tuple.size(); ++i) {
            if (i) os << ",";
            os << tuple[i];
        }
        os << ")";
        res.graph.vertices.push_back(os.str());
    }

    uint64_t edge_count = 0;
    for (size_t s = 0; s < objects.size(); ++s)
        for (size_t t = 0; t < objects.size(); ++t) {
            const auto& src = objects[s]; // degrees m_j
            const auto& dst = objects[t]; // degrees n_i
            if (src.empty() || dst.empty()) continue;
            // per entry (i,j), the admissible generators (or zero)
            std::vector<std::vector<int>> choices;
            for (int ni : dst)
                for (int mj : src) {
                    std::vector<int> c{-1}; // zero entry
                    for (size_t gidx = 0; gidx < alg.generators.size(); ++gidx)
                        if (alg.generators[gidx].degree == ni - mj)
                            c.push_back(static_cast<int>(gidx));
                    choices.push_back(std::move(c));
                }
            // odometer over all entry assignments; skip the all-zero matrix
            std::vector<size_t> idx(choices.size(), 0);
            bool done = false;
            while (!done) {
                bool all_zero = true;
                for (size_t k = 0; k < choices.size(); ++k)
                    if (choices[k][idx[k]] != -1) all_zero = false;
                if (!all_zero) {
                    if (++edge_count > max_edges)
                        throw EnumerationLimitError("matrix graph exceeds the edge budget");
                    std::ostringstream id;
                    id << "m" << s << "_" << t << "_";
                    std::vector<std::vector<LiftSummand>> coords(dst.size());
                    for (size_t i = 0; i < dst.size(); ++i)
                        for (size_t j = 0; j < src.size(); ++j) {
                            int gen = choices[i * src.size() + j][idx[i * src.size() + j]];
                            id << (gen < 0 ? std::string("0")
                                           : alg.generators[static_cast<size_t>(gen)].id);
                            if (gen >= 0)
                                coords[i].push_back(
                                    LiftSummand{src[j], gen, static_cast<int>(j)});
                            if (i + 1 < dst.size() || j + 1 < src.size()) id << ".";
                        }
                    res.graph.edges.push_back(
                        GraphEdge{id.str(), static_cast<int>(s), static_cast<int>(t)});
                    res.lift.coords.push_back(std::move(coords));
                }
                done = true;
                for (size_t k = choices.size(); k-- > 0;) {
                    if (++idx[k] < choices[k].size()) {
                        done = false;
                        break;
                    }
                    idx[k] = 0;
                }
            }
        }
    res.graph.validate();
    return res;
}

} // namespace trackalg
