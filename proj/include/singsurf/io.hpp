#pragma once

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "singsurf/classify.hpp"
#include "singsurf/dual.hpp"
#include "singsurf/normal_form.hpp"

namespace singsurf {

using ordered_json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// On-disk germ description. Two modes: a raw map-germ (three coefficient
/// lists) or a normal-form coefficient table. Rationals are [num, den]
/// integer pairs; floats are never accepted in inputs.
struct GermDocument {
    enum class Mode { raw, normal_form };
    struct Term {
        int i = 0, j = 0;
        Rat value;
        friend bool operator==(const Term& a, const Term& b) {
            return a.i == b.i && a.j == b.j && a.value == b.value;
        }
    };
    Mode mode = Mode::normal_form;
    int order = 9;
    std::array<std::vector<Term>, 3> components;  // raw mode
    std::vector<Term> a;                          // normal_form mode
    std::vector<Term> b;                          // normal_form mode (j unused)
    std::optional<std::string> label_hint;

    friend bool operator==(const GermDocument& x, const GermDocument& y) {
        return x.mode == y.mode && x.order == y.order && x.components == y.components &&
               x.a == y.a && x.b == y.b && x.label_hint == y.label_hint;
    }
};

namespace detail {

inline mpz_class json_int(const ordered_json& v, const char* what) {
    if (v.is_number_integer()) return mpz_class(std::to_string(v.get<long long>()));
    if (v.is_string()) {
        mpz_class z;
        if (z.set_str(v.get<std::string>(), 10) != 0)
            throw ParseError(std::string("bad integer literal in ") + what);
        return z;
    }
    throw ParseError(std::string("expected integer (or integer string) in ") + what);
}

inline ordered_json render_mpz(const mpz_class& z) {
    if (z.fits_slong_p()) return ordered_json(static_cast<long long>(z.get_si()));
    return ordered_json(z.get_str());
}

GermDocument germ_document_from_json(const ordered_json& j);

inline std::vector<GermDocument::Term> parse_terms(const ordered_json& arr, int order,
                                                   bool b_table, const char* what) {
    if (!arr.is_array()) throw ParseError(std::string(what) + " must be an array of quadruples");
    std::vector<GermDocument::Term> out;
    std::set<std::pair<int, int>> seen;
    for (const auto& q : arr) {
        std::size_t want = b_table ? 3 : 4;
        if (!q.is_array() || q.size() != want)
            throw ParseError(std::string("each entry of ") + what + " must be " +
                             (b_table ? "[i, num, den]" : "[i, j, num, den]"));
        GermDocument::Term t;
        t.i = int(json_int(q[0], what).get_si());
        t.j = b_table ? 0 : int(json_int(q[1], what).get_si());
        mpz_class num = json_int(q[b_table ? 1 : 2], what);
        mpz_class den = json_int(q[b_table ? 2 : 3], what);
        if (den == 0) throw ParseError(std::string("zero denominator in ") + what);
        t.value = ratio(num, den);
        if (t.i < 0 || t.j < 0 || t.i + t.j > order)
            throw ParseError(std::string("exponents out of range in ") + what + ": (" +
                             std::to_string(t.i) + "," + std::to_string(t.j) + ")");
        if (!seen.insert({t.i, t.j}).second)
            throw ParseError(std::string("duplicate key in ") + what + ": (" +
                             std::to_string(t.i) + "," + std::to_string(t.j) + ")");
        out.push_back(std::move(t));
    }
    return out;
}

inline ordered_json render_terms(const std::vector<GermDocument::Term>& ts, bool b_table) {
    ordered_json arr = ordered_json::array();
    for (const auto& t : ts) {
        ordered_json q = ordered_json::array();
        q.push_back(t.i);
        if (!b_table) q.push_back(t.j);
        q.push_back(render_mpz(t.value.get_num()));
        q.push_back(render_mpz(t.value.get_den()));
        arr.push_back(q);
    }
    return arr;
}

}  // namespace detail

inline GermDocument parse_germ_document(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("JSON parse error: ") + e.what());
    }
    try {
        return detail::germ_document_from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed document: ") + e.what());
    }
}

namespace detail {
inline GermDocument germ_document_from_json(const ordered_json& j) {
    GermDocument doc;
    if (!j.is_object()) throw ParseError("document must be a JSON object");
    std::string mode = j.value("mode", std::string());
    if (mode == "raw")
        doc.mode = GermDocument::Mode::raw;
    else if (mode == "normal_form")
        doc.mode = GermDocument::Mode::normal_form;
    else
        throw ParseError("mode must be \"raw\" or \"normal_form\"");
    if (!j.contains("order") || !j["order"].is_number_integer())
        throw ParseError("missing integer field: order");
    doc.order = j["order"].get<int>();
    if (doc.order < 2 || doc.order > 40) throw ParseError("order out of supported range [2,40]");
    if (doc.mode == GermDocument::Mode::raw) {
        if (!j.contains("components") || !j["components"].is_array() ||
            j["components"].size() != 3)
            throw ParseError("raw mode needs a 3-element components array");
        for (int c = 0; c < 3; ++c)
            doc.components[c] =
                detail::parse_terms(j["components"][c], doc.order, false, "components");
    } else {
        if (!j.contains("a")) throw ParseError("normal_form mode needs field: a");
        doc.a = detail::parse_terms(j["a"], doc.order, false, "a");
        for (const auto& t : doc.a)
            if (t.i + t.j < 3 && !(t.i == 2 && t.j == 0))
                throw ParseError("a-table entries must satisfy i+j >= 3 or be (2,0)");
        if (j.contains("b")) {
            doc.b = detail::parse_terms(j["b"], doc.order, true, "b");
            for (const auto& t : doc.b)
                if (t.i < 2) throw ParseError("b-table entries need i >= 2");
        }
    }
    if (j.contains("label_hint")) {
        if (!j["label_hint"].is_string()) throw ParseError("label_hint must be a string");
        doc.label_hint = j["label_hint"].get<std::string>();
    }
    return doc;
}
}  // namespace detail

inline ordered_json render_germ_document_json(const GermDocument& doc) {
    ordered_json j;
    j["mode"] = doc.mode == GermDocument::Mode::raw ? "raw" : "normal_form";
    j["order"] = doc.order;
    if (doc.mode == GermDocument::Mode::raw) {
        ordered_json comps = ordered_json::array();
        for (int c = 0; c < 3; ++c) comps.push_back(detail::render_terms(doc.components[c], false));
        j["components"] = comps;
    } else {
        j["a"] = detail::render_terms(doc.a, false);
        j["b"] = detail::render_terms(doc.b, true);
    }
    if (doc.label_hint) j["label_hint"] = *doc.label_hint;
    return j;
}

inline std::string render_germ_document(const GermDocument& doc) {
    return render_germ_document_json(doc).dump(2) + "\n";
}

inline MapGerm<Rat> document_to_germ(const GermDocument& doc) {
    if (doc.mode != GermDocument::Mode::raw)
        throw std::invalid_argument("document_to_germ: not a raw document");
    MapGerm<Rat> g(doc.order);
    for (int c = 0; c < 3; ++c) {
        Jet2Q jet(doc.order);
        for (const auto& t : doc.components[c]) jet.set_coeff(t.i, t.j, t.value);
        g.comp[c] = jet;
    }
    if (!is_zero(g.comp[0].coeff(0, 0)) || !is_zero(g.comp[1].coeff(0, 0)) ||
        !is_zero(g.comp[2].coeff(0, 0)))
        throw ParseError("raw germ must have zero constant terms");
    return g;
}

inline NormalFormCoeffs<Rat> document_to_coeffs(const GermDocument& doc) {
    if (doc.mode != GermDocument::Mode::normal_form)
        throw std::invalid_argument("document_to_coeffs: not a normal_form document");
    NormalFormCoeffs<Rat> c(doc.order);
    for (const auto& t : doc.a) c.set_a(t.i, t.j, t.value);
    for (const auto& t : doc.b) c.set_b(t.i, t.value);
    return c;
}

inline GermDocument coeffs_to_document(const NormalFormCoeffs<Rat>& c) {
    GermDocument doc;
    doc.mode = GermDocument::Mode::normal_form;
    doc.order = c.order();
    for (int d = 2; d <= c.order(); ++d)
        for (int j = 0; j <= d; ++j) {
            int i = d - j;
            if (d == 2 && !(i == 2 && j == 0)) continue;
            if (!is_zero(c.a(i, j))) doc.a.push_back({i, j, c.a(i, j)});
        }
    for (int i = 2; i <= c.order(); ++i)
        if (!is_zero(c.b(i))) doc.b.push_back({i, 0, c.b(i)});
    return doc;
}

/// --- report rendering helpers (exact scalars as strings + doubles) ---

template <class F>
ordered_json exact_value_json(const F& exact, double value) {
    ordered_json j;
    j["exact"] = to_str(exact);
    j["value"] = value;
    return j;
}

inline ordered_json atype_json(const AType& t) {
    ordered_json j;
    j["label"] = t.label();
    if (t.in_family()) {
        j["family"] = std::string(1, "SBCF"[int(t.family)]);
        j["k"] = t.k;
        j["blowup_n"] = t.blowup_n;
        j["chart"] = "Pi_" + std::to_string(t.blowup_n + 1);
    } else {
        j["reason"] = t.reason;
    }
    return j;
}

inline ordered_json height_json(const HeightClass& h) {
    ordered_json j;
    j["atype"] = to_string(h.atype);
    j["versal_H"] = h.versal_H;
    j["versal_Hext"] = h.versal_Hext;
    j["route"] = h.route == HeightRoute::coefficient
                     ? "coefficient"
                     : (h.route == HeightRoute::geometric ? "geometric" : "combined");
    j["clause"] = h.clause;
    return j;
}

/// OBJ export: vertex list plus triangulated faces.
inline void write_obj(std::ostream& os, const DualMesh& mesh) {
    os << "# dual surface mesh\n";
    char buf[128];
    for (const auto& v : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v.pos[0], v.pos[1], v.pos[2]);
        os << buf;
    }
    for (const auto& f : mesh.faces)
        os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

/// CSV export: r, theta, x, y, z, point_type per vertex.
inline void write_csv(std::ostream& os, const DualMesh& mesh) {
    os << "r,theta,x,y,z,point_type\n";
    char buf[192];
    for (const auto& v : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,", v.r, v.theta, v.pos[0],
                      v.pos[1], v.pos[2]);
        os << buf << v.point_type << '\n';
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace singsurf
