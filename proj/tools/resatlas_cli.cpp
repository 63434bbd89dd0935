// resatlas command-line front end.
//
// Exit codes: 0 success, 1 a verification failed (or a budget ran out), 2 the
// input was rejected.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "resatlas/budget.hpp"
#include "resatlas/complexes.hpp"
#include "resatlas/format.hpp"
#include "resatlas/kacmoody.hpp"
#include "resatlas/rings.hpp"
#include "resatlas/schur.hpp"
#include "resatlas/suite.hpp"

using json = nlohmann::ordered_json;
using namespace resatlas;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kBadInput = 2;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    bool json = false;
    std::uint64_t seed = 1;
    int cutoff = 4;
    int max_height = 20;
    std::string pqr;
};

std::vector<long long> parse_list(const std::string& text, const std::string& what) {
    std::vector<long long> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            long long v = std::stoll(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw InputError(what + ": cannot read '" + item + "' as an integer");
        }
    }
    return out;
}

std::vector<int> to_ints(const std::vector<long long>& v) { return std::vector<int>(v.begin(), v.end()); }

TpqrGraph graph_from_pqr(const std::string& text) {
    auto v = parse_list(text, "--pqr");
    if (v.size() != 3) throw InputError("--pqr needs three integers p,q,r");
    return TpqrGraph::make(static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2]));
}

ResolutionFormat length3_format(const std::vector<int>& f) {
    if (f.size() != 4) throw InputError("a format needs four ranks f0 f1 f2 f3");
    for (int x : f)
        if (x <= 0) throw InputError("ranks must be positive integers");
    auto fmt = derive_ranks(f);
    if (!fmt.valid) throw InputError("invalid format " + fmt.to_string() + ": " + fmt.diagnosis);
    return fmt;
}

// --pqr wins; otherwise the graph attached to a positional format.
TpqrGraph graph_from(const Globals& g, const std::vector<int>& format) {
    if (!g.pqr.empty()) return graph_from_pqr(g.pqr);
    if (format.empty()) throw InputError("give --pqr p,q,r or a format f0 f1 f2 f3");
    auto fmt = length3_format(format);
    return TpqrGraph::make(fmt.p(), fmt.q(), fmt.rr());
}

// "z1:1,u:2" by vertex name, or a plain list of n labels.
Weight parse_weight(const TpqrGraph& g, const std::string& text) {
    Weight w(g.n, 0);
    if (text.empty()) return w;
    if (text.find(':') == std::string::npos) {
        auto v = parse_list(text, "--lambda");
        if (static_cast<int>(v.size()) != g.n)
            throw InputError("--lambda needs " + std::to_string(g.n) + " labels or name:value pairs");
        return Weight(v.begin(), v.end());
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos) throw InputError("--lambda: expected name:value, got '" + item + "'");
        int v = g.vertex_by_name(item.substr(0, colon));
        if (v < 0) throw InputError("--lambda: unknown vertex '" + item.substr(0, colon) + "'");
        w[v] = parse_list(item.substr(colon + 1), "--lambda").at(0);
    }
    return w;
}

Budget cli_budget() {
    // without RESATLAS_BUDGET_MS the long enumerations stop after 30 s
    if (std::getenv("RESATLAS_BUDGET_MS")) return Budget::from_env();
    return Budget::milliseconds(30000);
}

std::string word_string(const TpqrGraph& g, const std::vector<int>& word) {
    if (word.empty()) return "e";
    std::string s;
    for (int v : word) s += "s_" + g.vertex_name(v) + " ";
    s.pop_back();
    return s;
}

json labels_json(const TpqrGraph& g, const Weight& w) {
    json j = json::object();
    for (int v = 0; v < g.n; ++v) j[g.vertex_name(v)] = w[v];
    return j;
}

std::string pqr_string(const TpqrGraph& g) {
    return "(" + std::to_string(g.p) + "," + std::to_string(g.q) + "," + std::to_string(g.r) + ")";
}

std::string bigint_json(const BigInt& v) { return v.get_str(); }

json fixture_json(const FreeComplex& c) {
    json j;
    j["name"] = c.name;
    j["format"] = c.f;
    std::set<std::string> vars;
    json mats = json::array();
    for (int i = 1; i <= c.length(); ++i) {
        json rows = json::array();
        const PMatrix& m = c.map(i);
        for (int r = 0; r < m.rows(); ++r) {
            json row = json::array();
            for (int k = 0; k < m.cols(); ++k) {
                row.push_back(m(r, k).to_string());
                for (int v : m(r, k).variables()) vars.insert(VarRegistry::name(v));
            }
            rows.push_back(row);
        }
        mats.push_back({{"map", "d_" + std::to_string(i)}, {"entries", rows}});
    }
    j["variables"] = vars;
    j["matrices"] = mats;
    return j;
}

void print_matrix(std::ostream& os, const std::string& label, const PMatrix& m) {
    os << label << " (" << m.rows() << "x" << m.cols() << "):\n";
    for (int r = 0; r < m.rows(); ++r) {
        os << "  [";
        for (int k = 0; k < m.cols(); ++k) os << (k ? ", " : "") << m(r, k).to_string();
        os << "]\n";
    }
}

void emit(const Globals& g, const json& j, const std::string& text) {
    if (g.json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

// ---------------------------------------------------------------- analyze

int cmd_analyze(const Globals& g, const std::vector<int>& f) {
    auto fmt = length3_format(f);
    json j;
    std::ostringstream t;
    j["format"] = fmt.f;
    j["format_reversed"] = fmt.reversed_string();
    j["ranks"] = std::vector<int>(fmt.r.begin() + 1, fmt.r.end());
    t << "format " << fmt.to_string() << "  (listed from F_3: " << fmt.reversed_string() << ")\n";
    t << "ranks r1,r2,r3 = " << fmt.r[1] << "," << fmt.r[2] << "," << fmt.r[3] << "\n";
    j["exists"] = format_exists(fmt.f);
    if (fmt.q() < 1) {
        j["pqr"] = nullptr;
        j["class"] = "none";
        t << "no T_{p,q,r} graph: r_2 = 1\n";
        emit(g, j, t.str());
        return kOk;
    }
    auto graph = TpqrGraph::make(fmt.p(), fmt.q(), fmt.rr());
    auto cls = classify(graph.p, graph.q, graph.r);
    bool noeth = noetherian_generic_ring(fmt);
    j["pqr"] = {graph.p, graph.q, graph.r};
    j["class"] = cls.kind_name();
    j["dynkin_name"] = cls.dynkin.empty() ? json(nullptr) : json(cls.dynkin);
    j["signature"] = {cls.n_plus, cls.n_zero, cls.n_minus};
    j["noetherian"] = noeth;
    t << "(p,q,r) = " << pqr_string(graph) << "  class " << cls.kind_name();
    if (!cls.dynkin.empty()) t << " " << cls.dynkin;
    t << "  signature (" << cls.n_plus << "," << cls.n_zero << "," << cls.n_minus << ")\n";
    t << "noetherian generic ring: " << (noeth ? "true" : "false") << "\n";
    t << "exists (Euler characteristic 0 and r_2 > 1): " << (format_exists(fmt.f) ? "true" : "false") << "\n";

    // defect levels one at a time, so a budget stop keeps what was finished
    Budget budget = cli_budget();
    std::vector<long long> dims;
    std::optional<long long> total;
    bool truncated = false;
    for (int m = 1; m <= g.cutoff; ++m) {
        try {
            auto d = defect_graded_dims(graph.p, graph.q, graph.r, m, budget);
            dims = d.dims;
            total = d.total;
            if (d.finite_class) {
                dims.resize(std::max<std::size_t>(1, static_cast<std::size_t>(d.top_level)));
                break;
            }
        } catch (const BudgetExceeded&) {
            truncated = true;
            break;
        }
    }
    j["defect"] = {{"levels", dims}, {"budget_exhausted", truncated}};
    if (total) j["defect"]["total"] = *total;
    t << "defect graded dims [";
    for (std::size_t i = 0; i < dims.size(); ++i) t << (i ? "," : "") << dims[i];
    t << "]" << (total ? "  total " + std::to_string(*total) : "") << (truncated ? "  (budget exhausted)" : "")
      << "\n";

    json fams = json::array();
    for (auto& fam : semigroup_generators(fmt)) {
        json jf;
        jf["family"] = fam.number;
        jf["members"] = json::array();
        for (auto& mu : fam.members) jf["members"].push_back(mu.to_string());
        jf["labels"] = fam.labels;
        if (!fam.note.empty()) jf["note"] = fam.note;
        fams.push_back(jf);
        t << "generator family " << fam.number << ": " << fam.members.size() << " member(s)";
        if (!fam.labels.empty()) {
            t << " [";
            for (std::size_t i = 0; i < fam.labels.size(); ++i) t << (i ? ", " : "") << fam.labels[i];
            t << "]";
        }
        if (!fam.note.empty()) t << " (" << fam.note << ")";
        t << "\n";
    }
    j["generators"] = fams;
    emit(g, j, t.str());
    return kOk;
}

// ---------------------------------------------------------------- roots

int cmd_roots(const Globals& g, const std::vector<int>& f) {
    auto graph = graph_from(g, f);
    if (g.max_height < 1) throw InputError("--max-height must be positive");
    auto A = cartan_matrix(graph);
    auto rs = enumerate_roots(A, g.max_height, cli_budget());
    json j;
    std::ostringstream t;
    j["pqr"] = {graph.p, graph.q, graph.r};
    j["max_height"] = g.max_height;
    j["complete"] = rs.complete;
    j["positive_roots"] = rs.positive.size();
    j["positive_with_multiplicity"] = rs.count_with_mult();
    json list = json::array();
    t << "T" << pqr_string(graph) << ": " << rs.positive.size() << " positive roots of height <= " << g.max_height
      << " (" << rs.count_with_mult() << " with multiplicity)" << (rs.complete ? ", complete" : "") << "\n";
    for (auto& r : rs.positive) {
        long long norm = pairing(A, r.k, r.k);
        list.push_back({{"coefficients", r.k}, {"height", r.height}, {"mult", r.mult}, {"norm", norm}});
        t << "  ht " << r.height << "  [";
        for (std::size_t i = 0; i < r.k.size(); ++i) t << (i ? "," : "") << r.k[i];
        t << "]  mult " << r.mult << (norm == 2 ? "  real" : "  imaginary") << "\n";
    }
    j["roots"] = list;
    emit(g, j, t.str());
    return kOk;
}

// ---------------------------------------------------------------- defect

int cmd_defect(const Globals& g, const std::vector<int>& f) {
    auto graph = graph_from(g, f);
    if (g.cutoff < 1) throw InputError("--cutoff must be positive");
    auto d = defect_graded_dims(graph.p, graph.q, graph.r, g.cutoff, cli_budget());
    json j;
    std::ostringstream t;
    j["pqr"] = {graph.p, graph.q, graph.r};
    j["levels"] = d.dims;
    j["finite_class"] = d.finite_class;
    if (d.total) j["total"] = *d.total;
    j["g1_formula"] = bigint_json(g1_dim_formula(graph.p, graph.q, graph.r));
    j["g2_formula"] = bigint_json(g2_dim_formula(graph.p, graph.q, graph.r));
    t << "defect dims for T" << pqr_string(graph) << " by z1 level:";
    for (std::size_t m = 0; m < d.dims.size(); ++m) t << " L_" << m + 1 << "=" << d.dims[m];
    t << "\n";
    if (d.total) t << "finite class, total " << *d.total << "\n";
    t << "g_1 formula " << g1_dim_formula(graph.p, graph.q, graph.r) << ", g_2 formula "
      << g2_dim_formula(graph.p, graph.q, graph.r) << "\n";
    emit(g, j, t.str());
    return kOk;
}

// ---------------------------------------------------------------- kostant

int cmd_kostant(const Globals& g, const std::vector<int>& f, int length) {
    auto graph = graph_from(g, f);
    if (length < 0) throw InputError("--length must be >= 0");
    auto A = cartan_matrix(graph);
    auto ws = enumerate_WS(A, graph.S(), length, cli_budget());
    json j;
    std::ostringstream t;
    j["pqr"] = {graph.p, graph.q, graph.r};
    j["length"] = length;
    json terms = json::array();
    t << "H_" << length << " of the nilradical for T" << pqr_string(graph) << ", S = all but z1:\n";
    for (auto& w : ws.by_length[length]) {
        Weight mu = dot_action(A, w.word, Weight(graph.n, 0));
        terms.push_back({{"word", word_string(graph, w.word)}, {"weight", labels_json(graph, mu)}});
        t << "  " << word_string(graph, w.word) << "  ->  " << weight_to_string(graph, mu) << "\n";
    }
    j["components"] = terms;
    j["count"] = ws.by_length[length].size();
    emit(g, j, t.str());
    return kOk;
}

// ---------------------------------------------------------------- bgg-check

int cmd_bgg(const Globals& g, const std::vector<int>& f, const std::string& lambda_text) {
    auto graph = g.pqr.empty() && f.empty() ? TpqrGraph::make(2, 2, 2) : graph_from(g, f);
    auto cls = classify(graph.p, graph.q, graph.r);
    Weight lambda = parse_weight(graph, lambda_text);
    for (auto x : lambda)
        if (x < 0) throw InputError("--lambda must be dominant");
    auto terms = bgg_initial_terms(graph, lambda);
    json j;
    std::ostringstream t;
    j["pqr"] = {graph.p, graph.q, graph.r};
    j["lambda"] = labels_json(graph, lambda);
    json layers = json::array();
    t << "BGG initial terms for T" << pqr_string(graph) << ", lambda " << weight_to_string(graph, lambda) << "\n";
    for (std::size_t k = 0; k < terms.layers.size(); ++k) {
        json layer = json::array();
        for (std::size_t e = 0; e < terms.layers[k].size(); ++e) {
            layer.push_back({{"word", word_string(graph, terms.words[k][e])},
                             {"weight", labels_json(graph, terms.layers[k][e])}});
            t << "  layer " << k << ": " << word_string(graph, terms.words[k][e]) << " . lambda = "
              << weight_to_string(graph, terms.layers[k][e]) << "\n";
        }
        layers.push_back(layer);
    }
    j["layers"] = layers;
    j["closed_forms_ok"] = terms.closed_forms_ok;
    j["notes"] = terms.notes;
    t << "closed forms " << (terms.closed_forms_ok ? "agree" : "DISAGREE") << "\n";
    for (auto& n : terms.notes) t << "  note: " << n << "\n";
    bool ok = terms.closed_forms_ok;
    if (cls.kind == TpqrKind::Finite) {
        auto e = bgg_euler_check(graph, lambda, g.cutoff);
        j["euler_check"] = {{"ok", e.ok}, {"cutoff", g.cutoff}, {"detail", e.detail}};
        t << "Euler characteristic up to ht^S " << g.cutoff << ": " << (e.ok ? "holds" : "FAILS") << "  " << e.detail
          << "\n";
        ok = ok && e.ok;
    } else {
        j["euler_check"] = nullptr;
        t << "Euler characteristic check needs a finite class; skipped for " << cls.kind_name() << "\n";
    }
    emit(g, j, t.str());
    return ok ? kOk : kFailed;
}

// ---------------------------------------------------------------- ra-decompose

json quadruple_json(const GLWeightQuadruple& q) {
    return {{"F3", q.F3}, {"F2", q.F2}, {"F1", q.F1}, {"F0", q.F0}};
}

std::string quadruple_string(const GLWeightQuadruple& q) {
    return "F3:" + gl_weight_string(q.F3) + " F2:" + gl_weight_string(q.F2) + " F1:" + gl_weight_string(q.F1) +
           " F0:" + gl_weight_string(q.F0);
}

int cmd_ra(const Globals& g, const std::vector<int>& f, int homology, bool hilbert) {
    auto fmt = length3_format(f);
    if (g.cutoff < 0) throw InputError("--cutoff must be >= 0");
    json j;
    std::ostringstream t;
    j["format"] = fmt.f;
    j["cutoff"] = g.cutoff;
    auto rows = ra_enumerate(fmt, g.cutoff);
    json list = json::array();
    t << "R_a summands of " << fmt.to_string() << " with total degree <= " << g.cutoff << ": " << rows.size() << "\n";
    for (auto& r : rows) {
        list.push_back({{"mu", r.mu.to_string()}, {"total", r.mu.total()}, {"weights", quadruple_json(r.weights)}});
        t << "  " << r.mu.to_string() << "  ->  " << quadruple_string(r.weights) << "\n";
    }
    j["summands"] = list;
    j["multiplicity_free"] = true;
    if (homology > 0) {
        auto h = homology_weights(fmt, homology, g.cutoff);
        json hw = json::array();
        t << "H_" << homology - 1 << " weights (F_0..F_3), total <= " << g.cutoff << ": " << h.weights.size() << "\n";
        for (auto& w : h.weights) {
            hw.push_back(w);
            t << " ";
            for (auto& part : w) t << " " << gl_weight_string(part);
            t << "\n";
        }
        j["homology"] = {{"index", homology - 1}, {"weights", hw}, {"generator", h.generator},
                         {"generator_is_wedge", h.generator_is_wedge}};
        if (!h.generator.empty()) {
            t << "  minimal generator:";
            for (auto& part : h.generator) t << " " << gl_weight_string(part);
            t << (h.generator_is_wedge ? "  (exterior power up to a twist)" : "") << "\n";
        }
    }
    if (hilbert) {
        json cells = json::array();
        t << "Hilbert function by (a,b,c,|alpha|,|beta|,|gamma|):\n";
        for (auto& c : hilbert_truncation(fmt, g.cutoff)) {
            cells.push_back({{"multidegree", c.multidegree}, {"dim", bigint_json(c.dim)}});
            t << "  (";
            for (std::size_t i = 0; i < c.multidegree.size(); ++i) t << (i ? "," : "") << c.multidegree[i];
            t << ")  " << c.dim << "\n";
        }
        j["hilbert"] = cells;
    }
    emit(g, j, t.str());
    return kOk;
}

// ---------------------------------------------------------------- rspec

int cmd_rspec(const Globals& g, const std::vector<int>& f) {
    auto fmt = length3_format(f);
    if (fmt.q() < 1) throw InputError("rspec needs r_2 >= 2");
    auto graph = TpqrGraph::make(fmt.p(), fmt.q(), fmt.rr());
    json j;
    std::ostringstream t;
    j["format"] = fmt.f;
    json list = json::array();
    t << "representation data of R_a summands for " << fmt.to_string() << ", total <= " << g.cutoff << "\n";
    for (int total = 0; total <= g.cutoff; ++total)
        for (auto& mu : mu_with_total(fmt, total)) {
            auto c = rspec_component(mu, fmt);
            list.push_back({{"mu", mu.to_string()},
                            {"sigma", c.sigma},
                            {"tau", c.tau},
                            {"theta", c.theta},
                            {"phi", c.phi},
                            {"lambda", labels_json(graph, c.lambda)}});
            t << "  " << mu.to_string() << "  sigma " << gl_weight_string(c.sigma) << " tau "
              << gl_weight_string(c.tau) << "  lambda " << weight_to_string(graph, c.lambda) << "\n";
        }
    j["components"] = list;
    emit(g, j, t.str());
    return kOk;
}

// ---------------------------------------------------------------- generators

int cmd_generators(const Globals& g, const std::vector<int>& f) {
    auto fmt = length3_format(f);
    json j;
    std::ostringstream t;
    j["format"] = fmt.f;
    json fams = json::array();
    for (auto& fam : semigroup_generators(fmt)) {
        json members = json::array();
        t << "family " << fam.number << ":";
        if (fam.members.empty()) t << " none";
        for (auto& mu : fam.members) {
            members.push_back(mu.to_string());
            t << " " << mu.to_string();
        }
        if (!fam.note.empty()) t << "  (" << fam.note << ")";
        if (!fam.labels.empty()) {
            t << "  components:";
            for (auto& l : fam.labels) t << " " << l;
        }
        t << "\n";
        fams.push_back({{"family", fam.number}, {"members", members}, {"labels", fam.labels}, {"note", fam.note}});
    }
    j["families"] = fams;
    emit(g, j, t.str());
    return kOk;
}

// ---------------------------------------------------------------- kstar-check

int cmd_kstar(const Globals& g, const std::vector<int>& f, const std::string& sigma_text, const std::string& tau_text,
              long long tval, int count) {
    auto fmt = length3_format(f);
    if (fmt.q() < 1) throw InputError("kstar-check needs r_2 >= 2");
    struct Case {
        GLWeight sigma, tau;
        long long t;
    };
    std::vector<Case> cases;
    if (!sigma_text.empty() || !tau_text.empty()) {
        auto s = parse_list(sigma_text, "--sigma"), ta = parse_list(tau_text, "--tau");
        cases.push_back({GLWeight(s.begin(), s.end()), GLWeight(ta.begin(), ta.end()), tval});
    } else {
        if (count < 1) throw InputError("--count must be positive");
        std::mt19937_64 rng(g.seed);
        std::uniform_int_distribution<int> entry(0, 3), tdist(1, 3);
        for (int k = 0; k < count; ++k) {
            Case c;
            c.sigma.resize(fmt.r[3]);
            c.tau.resize(fmt.r[1] + fmt.r[2]);
            for (auto& x : c.sigma) x = entry(rng);
            for (auto& x : c.tau) x = entry(rng);
            std::sort(c.sigma.rbegin(), c.sigma.rend());
            std::sort(c.tau.rbegin(), c.tau.rend());
            c.t = tdist(rng);
            cases.push_back(c);
        }
    }
    json j;
    std::ostringstream t;
    j["format"] = fmt.f;
    json list = json::array();
    bool all = true;
    for (auto& c : cases) {
        auto rep = dictionary_crosscheck(c.sigma, c.tau, c.t, fmt);
        all = all && rep.ok;
        list.push_back({{"sigma", c.sigma}, {"tau", c.tau}, {"t", c.t}, {"ok", rep.ok}, {"lines", rep.lines}});
        t << (rep.ok ? "ok  " : "BAD ") << "sigma " << gl_weight_string(c.sigma) << " tau " << gl_weight_string(c.tau)
          << " t " << c.t << "\n";
        for (auto& l : rep.lines) t << "    " << l << "\n";
    }
    j["cases"] = list;
    j["ok"] = all;
    emit(g, j, t.str());
    return all ? kOk : kFailed;
}

// ---------------------------------------------------------------- verify-*

json rank_json(const RankReport& rk) {
    json pt = json::object();
    for (auto& [v, val] : rk.point) pt[VarRegistry::name(v)] = val.get_str();
    return {{"ok", rk.ok}, {"expected", rk.expected}, {"observed", rk.observed}, {"certificate", rk.certificate},
            {"point", pt}};
}

void rank_text(std::ostream& t, const RankReport& rk) {
    t << "ranks r1.. at the seeded point: (";
    for (std::size_t i = 0; i < rk.observed.size(); ++i) t << (i ? "," : "") << rk.observed[i];
    t << ") expected (";
    for (std::size_t i = 0; i < rk.expected.size(); ++i) t << (i ? "," : "") << rk.expected[i];
    t << ")  " << (rk.ok ? "ok" : "MISMATCH") << "\n";
    for (auto& c : rk.certificate) t << "  certificate: " << c << "\n";
}

int cmd_verify_atype(const Globals& g, int r3) {
    if (r3 < 1 || r3 > 6) throw InputError("--r3 must lie in 1..6");
    auto b = atype_family_build(r3);
    auto comp = verify_complex(b.complex);
    auto rk = be_rank_check(b.complex, g.seed);
    bool ok = comp.ok && rk.ok && b.skew_pattern_ok;
    json j;
    std::ostringstream t;
    j["r3"] = r3;
    j["format"] = b.complex.f;
    j["format_reversed"] = derive_ranks(b.complex.f).reversed_string();
    j["delta_convention"] = b.delta_convention;
    j["skew_pattern_ok"] = b.skew_pattern_ok;
    j["x"] = {b.x[0].to_string(), b.x[1].to_string(), b.x[2].to_string()};
    j["compositions_zero"] = comp.ok;
    j["nonzero"] = comp.nonzero;
    j["ranks"] = rank_json(rk);
    j["fixture"] = fixture_json(b.complex);
    j["ok"] = ok;
    t << "A-type complex, r3 = " << r3 << ", format " << derive_ranks(b.complex.f).to_string() << "\n";
    t << b.delta_convention << "; Delta d_3 = 0\n";
    t << "B^T Delta B skew pattern " << (b.skew_pattern_ok ? "matches" : "DIFFERS") << "\n";
    if (r3 == 1) print_matrix(t, "Delta", b.delta);
    t << "compositions " << (comp.ok ? "vanish" : "DO NOT vanish") << "\n";
    for (auto& n : comp.nonzero) t << "  " << n << "\n";
    rank_text(t, rk);
    emit(g, j, t.str());
    return ok ? kOk : kFailed;
}

int cmd_monomial(const Globals& g, int tt) {
    if (tt < 2 || tt > 12) throw InputError("--t must lie in 2..12");
    auto c = monomial_complex(tt);
    auto comp = verify_complex(c);
    auto rk = be_rank_check(c, g.seed);
    bool ok = comp.ok && rk.ok;
    json j;
    std::ostringstream t;
    j["t"] = tt;
    j["generators"] = json::array();
    for (auto& p : monomial_generators(tt)) j["generators"].push_back(p.to_string());
    j["compositions_zero"] = comp.ok;
    j["nonzero"] = comp.nonzero;
    j["ranks"] = rank_json(rk);
    j["fixture"] = fixture_json(c);
    j["ok"] = ok;
    t << "monomial complex, t = " << tt << ", format (1," << 2 * tt << "," << 2 * tt << ",1)\n";
    if (tt <= 3)
        for (int i = 1; i <= 3; ++i) print_matrix(t, "d_" + std::to_string(i), c.map(i));
    t << "compositions " << (comp.ok ? "vanish" : "DO NOT vanish") << "\n";
    for (auto& n : comp.nonzero) t << "  " << n << "\n";
    rank_text(t, rk);
    emit(g, j, t.str());
    return ok ? kOk : kFailed;
}

int cmd_d4(const Globals& g) {
    auto model = d4_split_model();
    auto rep = d4_relation_check();
    json j;
    std::ostringstream t;
    json ee = json::object(), ef = json::object(), eee = json::object();
    t << "split model on (1,4,4,1), tables as printed:\n";
    for (auto& [k, v] : model.verbatim.ee) {
        std::string key = "e" + std::to_string(k.first) + "*e" + std::to_string(k.second);
        std::string val;
        for (int s = 0; s < 4; ++s)
            if (!v[s].is_zero()) val += (val.empty() ? "" : " + ") + ("(" + v[s].to_string() + ")f" + std::to_string(s + 1));
        ee[key] = val.empty() ? "0" : val;
        t << "  " << key << " = " << ee[key].get<std::string>() << "\n";
    }
    for (auto& [k, v] : model.verbatim.ef) {
        std::string key = "e" + std::to_string(k.first) + "*f" + std::to_string(k.second);
        ef[key] = v.to_string();
        t << "  " << key << " = (" << v.to_string() << ")g\n";
    }
    for (auto& [k, v] : model.verbatim.eee) {
        auto [a, b, c] = k;
        std::string key = "e" + std::to_string(a) + "*e" + std::to_string(b) + "*e" + std::to_string(c);
        eee[key] = v.to_string();
        t << "  " << key << " = (" << v.to_string() << ")g\n";
    }
    j["tables"] = {{"ee", ee}, {"ef", ef}, {"eee", eee}};
    j["v2"] = json::array();
    for (auto& v : model.verbatim.v2) j["v2"].push_back(v.to_string());
    j["table_conflicts"] = model.table_conflicts;
    for (auto& c : model.table_conflicts) t << "conflict: " << c << "\n";
    json attempts = json::array();
    for (auto& a : rep.attempts) {
        attempts.push_back({{"c_table", a.c_table},
                            {"found", a.found},
                            {"eps", a.eps},
                            {"lhs", a.lhs.to_string()},
                            {"rhs", a.rhs.to_string()}});
        t << "relation with the " << a.c_table << " e*f table: "
          << (a.found ? "both sides equal the Pfaffian" : "no sign normalization works") << "\n";
        t << "  lhs " << a.lhs.to_string() << "\n  rhs " << a.rhs.to_string() << "\n";
    }
    j["relation"] = {{"ok", rep.ok},
                     {"pfaffian", rep.pfaffian.to_string()},
                     {"attempts", attempts},
                     {"chosen", rep.chosen.c_table},
                     {"eps", rep.chosen.eps}};
    if (rep.ok)
        t << "chosen: " << rep.chosen.c_table << " table, eps = (" << rep.chosen.eps[0] << "," << rep.chosen.eps[1]
          << "," << rep.chosen.eps[2] << ")\n";
    emit(g, j, t.str());
    return rep.ok ? kOk : kFailed;
}

// ---------------------------------------------------------------- q1

int cmd_q1(const Globals& g, const std::string& format_text, const std::string& I, const std::string& J,
           const std::string& K, int tt, bool symmetry) {
    auto f = to_ints(parse_list(format_text, "--format"));
    length3_format(f);
    json j;
    std::ostringstream t;
    j["format"] = f;
    bool ok = true;
    if (!I.empty() || !J.empty() || !K.empty()) {
        auto u = q1_coefficient(f, to_ints(parse_list(I, "--I")), to_ints(parse_list(J, "--J")),
                                to_ints(parse_list(K, "--K")), tt);
        j["I"] = parse_list(I, "--I");
        j["J"] = parse_list(J, "--J");
        j["K"] = parse_list(K, "--K");
        j["t"] = tt;
        j["u"] = u.to_string();
        t << "u_{I,J,K} = " << u.to_string() << "\n";
    } else if (!symmetry) {
        throw InputError("q1 needs --I, --J, --K or --symmetry");
    }
    if (symmetry) {
        auto rep = q1_symmetry_check(f, g.seed);
        j["symmetry"] = {{"ok", rep.ok}, {"lines", rep.lines}};
        for (auto& l : rep.lines) t << l << "\n";
        t << "symmetric part vanishes on complexes: " << (rep.ok ? "yes" : "NO") << "\n";
        ok = rep.ok;
    }
    emit(g, j, t.str());
    return ok ? kOk : kFailed;
}

// ---------------------------------------------------------------- suite

int cmd_suite(const Globals& g, const std::string& name, int only, const std::string& inject) {
    if (name != "paper-checks") throw InputError("unknown suite '" + name + "' (available: paper-checks)");
    SuiteOptions opts;
    opts.budget = std::getenv("RESATLAS_BUDGET_MS") ? Budget::from_env() : Budget{};
    opts.inject = inject;
    if (!inject.empty()) {
        const auto& k = known_injections();
        if (std::find(k.begin(), k.end(), inject) == k.end()) throw InputError("unknown injection '" + inject + "'");
    }
    std::vector<CheckResult> results;
    if (only > 0) {
        if (only > acceptance_check_count()) throw InputError("--only must lie in 1.." + std::to_string(acceptance_check_count()));
        results.push_back(run_acceptance_check(only, opts));
    } else {
        results = run_acceptance_suite(opts);
    }
    bool all = true;
    json arr = json::array();
    std::ostringstream t;
    for (auto& r : results) {
        all = all && r.pass;
        arr.push_back({{"id", r.id},
                       {"name", r.name},
                       {"pass", r.pass},
                       {"seconds", std::round(r.seconds * 1000.0) / 1000.0},
                       {"limit_seconds", r.limit_seconds},
                       {"detail", r.detail}});
        t << (r.pass ? "PASS" : "FAIL") << "  " << r.id << ". " << r.name << "  " << r.detail << "\n";
    }
    t << (all ? "all checks passed" : "some checks FAILED") << "\n";
    json j{{"suite", name}, {"pass", all}, {"results", arr}};
    emit(g, j, t.str());
    return all ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"resatlas: free resolutions of length three and their Kac-Moody data"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_flag("--json", g.json, "Machine-readable output");
    app.add_option("--seed", g.seed, "Seed for random points and samples");
    app.add_option("--cutoff", g.cutoff, "Degree cutoff (default 4)");
    app.add_option("--max-height", g.max_height, "Root height cap (default 20)");
    app.add_option("--pqr", g.pqr, "Graph T_{p,q,r} given as p,q,r");

    std::vector<int> format;
    auto add_format = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("format", format, "Ranks f0 f1 f2 f3");
        if (required) opt->required()->expected(4);
        else opt->expected(0, 4);
    };

    auto* analyze = app.add_subcommand("analyze", "Format, graph class, defect dims and generators");
    add_format(analyze, true);
    auto* roots = app.add_subcommand("roots", "Positive roots with multiplicities up to --max-height");
    add_format(roots, false);
    auto* defect = app.add_subcommand("defect", "Graded dimensions of the defect Lie algebra");
    add_format(defect, false);
    int kostant_length = 2;
    auto* kostant = app.add_subcommand("kostant", "Kostant components of a given length");
    add_format(kostant, false);
    kostant->add_option("--length", kostant_length, "Length of the W(S) elements (default 2)");
    std::string lambda_text;
    auto* bgg = app.add_subcommand("bgg-check", "BGG initial terms and truncated Euler characteristic");
    add_format(bgg, false);
    bgg->add_option("--lambda", lambda_text, "Highest weight, e.g. z1:1,u:1");
    int homology = 0;
    bool hilbert = false;
    auto* ra = app.add_subcommand("ra-decompose", "GL-decomposition of R_a up to --cutoff");
    add_format(ra, true);
    ra->add_option("--homology", homology, "Also list weights of H_{j-1}");
    ra->add_flag("--hilbert", hilbert, "Also list the truncated Hilbert function");
    auto* rspec = app.add_subcommand("rspec", "Representation data attached to each summand");
    add_format(rspec, true);
    auto* gens = app.add_subcommand("generators", "Semigroup generator families");
    add_format(gens, true);
    std::string sigma_text, tau_text;
    long long kstar_t = 1;
    int kstar_count = 20;
    auto* kstar = app.add_subcommand("kstar-check", "Compare K* terms with BGG initial terms");
    add_format(kstar, true);
    kstar->add_option("--sigma", sigma_text, "sigma on F_3, comma separated");
    kstar->add_option("--tau", tau_text, "tau on F_1^*, comma separated");
    kstar->add_option("--t", kstar_t, "t >= 1");
    kstar->add_option("--count", kstar_count, "Random cases when sigma/tau are omitted (default 20)");
    int r3 = 2;
    auto* thm = app.add_subcommand("verify-thm112", "Build and verify the A-type complex");
    thm->add_option("--r3", r3, "r_3 >= 1 (default 2)");
    int mono_t = 2;
    auto* mono = app.add_subcommand("verify-monomial", "Build and verify the (1,2t,2t,1) monomial complex");
    mono->add_option("--t", mono_t, "t >= 2 (default 2)");
    auto* d4 = app.add_subcommand("verify-d4", "Split D4 model tables and the Pfaffian relation");
    std::string q_format = "1,4,5,2", qI, qJ, qK;
    int q_t = 1;
    bool q_sym = false;
    auto* q1 = app.add_subcommand("q1", "Coefficients u_{I,J,K}");
    q1->add_option("--format", q_format, "Length-3 format (default 1,4,5,2)");
    q1->add_option("--I", qI, "Row indices in F_1 (1-based)");
    q1->add_option("--J", qJ, "Row indices in F_2 (1-based)");
    q1->add_option("--K", qK, "Row indices in F_2 (1-based)");
    q1->add_option("--t", q_t, "Dual basis vector of F_3 (default 1)");
    q1->add_flag("--symmetry", q_sym, "Check that u_IJK + u_IKJ vanishes on complexes");
    std::string suite_name;
    int only = 0;
    std::string inject;
    auto* suite = app.add_subcommand("suite", "Run a verification suite");
    suite->add_option("name", suite_name, "Suite name (paper-checks)")->required();
    suite->add_option("--only", only, "Run a single check by number");
    suite->add_option("--inject", inject, "Deliberate defect, for testing the failure path")->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kBadInput;
    }

    try {
        if (*analyze) return cmd_analyze(g, format);
        if (*roots) return cmd_roots(g, format);
        if (*defect) return cmd_defect(g, format);
        if (*kostant) return cmd_kostant(g, format, kostant_length);
        if (*bgg) return cmd_bgg(g, format, lambda_text);
        if (*ra) return cmd_ra(g, format, homology, hilbert);
        if (*rspec) return cmd_rspec(g, format);
        if (*gens) return cmd_generators(g, format);
        if (*kstar) return cmd_kstar(g, format, sigma_text, tau_text, kstar_t, kstar_count);
        if (*thm) return cmd_verify_atype(g, r3);
        if (*mono) return cmd_monomial(g, mono_t);
        if (*d4) return cmd_d4(g);
        if (*q1) return cmd_q1(g, q_format, qI, qJ, qK, q_t, q_sym);
        if (*suite) return cmd_suite(g, suite_name, only, inject);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << " (raise RESATLAS_BUDGET_MS or lower the cutoff)\n";
        return kFailed;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kFailed;
    }
    return kBadInput;
}
