#include "ffk/jsonio.hpp"

namespace ffk {

Json element_to_json(const FieldElement& e) {
    if (e.field()->k == 1) return std::to_string(e.coeffs()[0]);
    Json arr = Json::array();
    for (u64 c : e.coeffs()) arr.push_back(std::to_string(c));
    return arr;
}

FieldElement element_from_json(const Json& j, const Field& f) {
    std::vector<u64> c(f->k, 0);
    if (j.is_string()) {
        c[0] = std::stoull(j.get<std::string>()) % f->p;
    } else if (j.is_array()) {
        if (j.size() > f->k) raise(Err::SyntaxError, "element has too many coordinates");
        for (size_t i = 0; i < j.size(); ++i) c[i] = std::stoull(j[i].get<std::string>()) % f->p;
    } else {
        raise(Err::SyntaxError, "element must be a decimal string or an array of them");
    }
    return FieldElement(f, std::move(c));
}

Json poly_to_json(const DensePoly& p) {
    Json arr = Json::array();
    for (auto& c : p.coeffs()) arr.push_back(element_to_json(c));
    return arr;
}

DensePoly poly_from_json(const Json& j, const Field& f) {
    std::vector<FieldElement> c;
    for (auto& e : j) c.push_back(element_from_json(e, f));
    return DensePoly(f, std::move(c));
}

Json field_to_json(const Field& f) {
    Json j;
    j["p"] = std::to_string(f->p);
    j["k"] = f->k;
    if (f->k > 1) {
        Json m = Json::array();
        for (u64 c : f->modulus) m.push_back(std::to_string(c));
        j["modulus"] = m;
    }
    return j;
}

Field field_from_json(const Json& j) {
    u64 p = std::stoull(j.at("p").get<std::string>());
    unsigned k = j.at("k").get<unsigned>();
    if (k == 1) return make_prime_field(p);
    std::vector<u64> m;
    for (auto& c : j.at("modulus")) m.push_back(std::stoull(c.get<std::string>()));
    return make_field_with_modulus(p, k, m);
}

Json forms_to_json(const LinearForms& forms) {
    Json j;
    Json mat = Json::array();
    for (auto& row : forms.matrix()) {
        Json r = Json::array();
        for (auto& e : row) r.push_back(element_to_json(e));
        mat.push_back(r);
    }
    j["matrix"] = mat;
    Json s = Json::array();
    for (auto& e : forms.shift()) s.push_back(element_to_json(e));
    j["shift"] = s;
    return j;
}

LinearForms forms_from_json(const Json& j, const Field& f) {
    Matrix m;
    for (auto& row : j.at("matrix")) {
        Vec r;
        for (auto& e : row) r.push_back(element_from_json(e, f));
        m.push_back(std::move(r));
    }
    Vec s;
    for (auto& e : j.at("shift")) s.push_back(element_from_json(e, f));
    return LinearForms(std::move(m), std::move(s));
}

Json fiber_to_json(const LiftingFiber& fb) {
    Json j;
    j["schema"] = kSchemaTag;
    j["type"] = "lifting_fiber";
    j["field"] = field_to_json(fb.K);
    j["stage"] = fb.stage;
    j["primitive"] = fb.primitive;
    Json lp = Json::array();
    for (auto& e : fb.lifting_point) lp.push_back(element_to_json(e));
    j["lifting_point"] = lp;
    j["forms"] = forms_to_json(fb.forms);
    j["q"] = poly_to_json(fb.q);
    Json v = Json::array();
    for (auto& p : fb.v) v.push_back(poly_to_json(p));
    j["v"] = v;
    return j;
}

LiftingFiber fiber_from_json(const Json& j) {
    if (j.value("schema", "") != kSchemaTag)
        raise(Err::SyntaxError, "unknown or missing schema tag");
    if (j.value("type", "") != "lifting_fiber")
        raise(Err::SyntaxError, "json is not a lifting fiber");
    LiftingFiber fb;
    fb.K = field_from_json(j.at("field"));
    fb.stage = j.at("stage").get<int>();
    fb.primitive = j.at("primitive").get<size_t>();
    for (auto& e : j.at("lifting_point")) fb.lifting_point.push_back(element_from_json(e, fb.K));
    fb.forms = forms_from_json(j.at("forms"), fb.K);
    fb.q = poly_from_json(j.at("q"), fb.K);
    for (auto& p : j.at("v")) fb.v.push_back(poly_from_json(p, fb.K));
    if (fb.lifting_point.size() != fb.primitive)
        raise(Err::SyntaxError, "lifting point length disagrees with the primitive row");
    if (fb.forms.rows() != fb.primitive + 1 + fb.v.size())
        raise(Err::SyntaxError, "parametrization count disagrees with the frame");
    return fb;
}

Json trace_to_json(const SolveTrace& t, u64 seed) {
    Json j;
    j["seed"] = std::to_string(seed);
    j["field_degree"] = t.field_degree;
    j["global_retries"] = t.global_retries;
    Json deltas = Json::array();
    for (auto d : t.deltas) deltas.push_back(d);
    j["deltas"] = deltas;
    Json stages = Json::array();
    for (auto& s : t.stages) {
        Json e;
        e["name"] = s.name;
        e["retries"] = s.retries;
        e["degree"] = s.degree;
        stages.push_back(e);
    }
    j["stages"] = stages;
    return j;
}

} // namespace ffk
