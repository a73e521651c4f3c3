#include "endoscopy_kit/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace ek {

using nlohmann::json;

json param_to_json(const FormalParameter& p) {
    json j;
    if (p.context.is_unitary())
        j["context"] = json{{"unitary", json{{"kappa", p.context.kappa}}}};
    else
        j["context"] = "linear";
    j["N"] = p.ambient_N;
    json cs = json::array();
    for (const auto& c : p.constituents) {
        json e;
        e["id"] = c.param.id;
        e["m"] = c.param.m;
        e["n"] = c.param.n;
        e["r"] = c.param.r;
        e["self_dual"] = c.param.self_dual;
        e["parity"] = c.param.parity;
        e["mult"] = c.mult;
        cs.push_back(std::move(e));
    }
    j["constituents"] = std::move(cs);
    return j;
}

FormalParameter param_from_json(const json& j) {
    FormalParameter p;
    const json& ctx = j.at("context");
    if (ctx.is_string()) {
        if (ctx.get<std::string>() != "linear")
            throw std::invalid_argument("unknown context: " + ctx.get<std::string>());
        p.context = Context::linear();
    } else {
        p.context = Context::unitary(ctx.at("unitary").at("kappa").get<int>());
    }
    p.ambient_N = j.at("N").get<int>();
    for (const auto& e : j.at("constituents")) {
        Constituent c;
        c.param.id = e.at("id").get<std::string>();
        c.param.m = e.at("m").get<int>();
        c.param.n = e.at("n").get<int>();
        c.param.r = e.value("r", 1);
        c.param.self_dual = e.at("self_dual").get<bool>();
        c.param.parity = e.at("parity").get<int>();
        c.mult = e.at("mult").get<int>();
        p.constituents.push_back(std::move(c));
    }
    p.validate();
    return p;
}

json place_to_json(GroupFamily group, const Place& place) {
    json j;
    j["id"] = place.id;
    j["kind"] = place_kind_name(place.kind);
    if (group == GroupFamily::GL) {
        j["x"] = place.inv.x;
        return j;
    }
    switch (place.kind) {
        case PlaceKind::PAdicInert: j["a"] = place.inv.a; break;
        case PlaceKind::RealInert:
            j["p"] = place.inv.p;
            j["q"] = place.inv.q;
            break;
        default: j["x"] = place.inv.x; break;
    }
    return j;
}

Place place_from_json(GroupFamily group, const json& j) {
    Place place;
    place.id = j.at("id").get<std::string>();
    place.kind = place_kind_from_name(j.at("kind").get<std::string>());
    if (group == GroupFamily::GL) {
        place.inv.x = j.at("x").get<long long>();
        return place;
    }
    switch (place.kind) {
        case PlaceKind::PAdicInert: place.inv.a = j.at("a").get<int>(); break;
        case PlaceKind::RealInert:
            place.inv.p = j.at("p").get<int>();
            place.inv.q = j.at("q").get<int>();
            break;
        default: place.inv.x = j.at("x").get<long long>(); break;
    }
    return place;
}

json inner_form_to_json(const GlobalInnerFormSpec& spec) {
    json j;
    j["group"] = spec.group == GroupFamily::U ? "U" : "GL";
    j["N"] = spec.N;
    json places = json::array();
    for (const auto& pl : spec.places) places.push_back(place_to_json(spec.group, pl));
    j["places"] = std::move(places);
    return j;
}

GlobalInnerFormSpec inner_form_from_json(const json& j) {
    GlobalInnerFormSpec spec;
    const std::string g = j.at("group").get<std::string>();
    if (g == "U")
        spec.group = GroupFamily::U;
    else if (g == "GL")
        spec.group = GroupFamily::GL;
    else
        throw std::invalid_argument("unknown group family: " + g);
    spec.N = j.at("N").get<int>();
    for (const auto& e : j.at("places")) {
        Place pl = place_from_json(spec.group, e);
        validate_place(spec.group, spec.N, pl);
        spec.places.push_back(std::move(pl));
    }
    return spec;
}

json rat_to_json(const Rat& r) { return json{{"num", r.num()}, {"den", r.den()}}; }

Rat rat_from_json(const json& j) {
    return Rat(j.at("num").get<long long>(), j.at("den").get<long long>());
}

json halfint_to_json(const HalfInt& x) { return json{{"two_x", x.two_x()}}; }

HalfInt halfint_from_json(const json& j) { return HalfInt(j.at("two_x").get<int>()); }

json complex_to_json(const std::complex<double>& z) {
    return json{{"re", z.real()}, {"im", z.imag()}};
}

std::complex<double> complex_from_json(const json& j) {
    return {j.at("re").get<double>(), j.at("im").get<double>()};
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open JSON file: " + path);
    json j;
    in >> j;
    return j;
}

} // namespace ek
