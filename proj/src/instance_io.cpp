#include <cmath>

#include "fracx/bench.hpp"
#include "fracx/errors.hpp"

namespace fracx {

using nlohmann::json;

namespace {

// JSON has no infinities; unbounded ends are written as null.
json bound(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
double bound(const json& j, double inf) { return j.is_null() ? inf : j.get<double>(); }

template <class T>
T field(const json& j, const char* key) {
    if (!j.contains(key)) throw InvalidArgument(std::string("instance lacks field '") + key + "'");
    return j.at(key).get<T>();
}

}  // namespace

json to_json(const FractionalProgram& fp) {
    json j;
    j["n"] = fp.n;
    j["m"] = fp.m();
    j["ratios"] = json::array();
    for (const Ratio& r : fp.ratios) j["ratios"].push_back({{"a0", r.a0}, {"a", r.a}, {"b0", r.b0}, {"b", r.b}});
    j["c"] = fp.c;
    j["C"] = fp.C;
    j["d"] = fp.d;
    j["var_kind"] = json::array();
    for (const VarKind& k : fp.kind) {
        if (k.binary) j["var_kind"].push_back("binary");
        else j["var_kind"].push_back({{"lo", bound(k.lo)}, {"hi", bound(k.hi)}});
    }
    j["sense"] = fp.sense == Sense::maximize ? "maximize" : "minimize";
    return j;
}

FractionalProgram program_from_json(const json& j) {
    FractionalProgram fp;
    try {
        fp.n = field<int>(j, "n");
        for (const json& r : j.at("ratios"))
            fp.ratios.push_back({field<double>(r, "a0"), field<std::vector<double>>(r, "a"), field<double>(r, "b0"),
                                 field<std::vector<double>>(r, "b")});
        if (j.contains("m") && j.at("m").get<int>() != fp.m()) throw DimensionMismatch("m disagrees with ratios");
        fp.c = j.contains("c") ? j.at("c").get<std::vector<double>>() : std::vector<double>(fp.n, 0.0);
        if (j.contains("C")) fp.C = j.at("C").get<std::vector<std::vector<double>>>();
        if (j.contains("d")) fp.d = j.at("d").get<std::vector<double>>();
        if (j.contains("var_kind")) {
            for (const json& k : j.at("var_kind")) {
                if (k.is_string()) {
                    if (k.get<std::string>() != "binary") throw InvalidArgument("unknown variable kind");
                    fp.kind.push_back(VarKind::make_binary());
                } else {
                    fp.kind.push_back(VarKind::continuous(bound(k.at("lo"), -kInf), bound(k.at("hi"), kInf)));
                }
            }
        } else {
            fp.kind.assign(fp.n, VarKind::make_binary());
        }
        std::string sense = j.value("sense", "maximize");
        if (sense != "maximize" && sense != "minimize") throw InvalidArgument("sense must be maximize or minimize");
        fp.sense = sense == "maximize" ? Sense::maximize : Sense::minimize;
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("malformed instance: ") + e.what());
    }
    check_dimensions(fp);
    return fp;
}

json to_json(const UnivariateInstance& u) {
    return {{"type", "univariate"}, {"a", u.a},       {"b", u.b},       {"c", u.c},      {"r", u.r},
            {"x_lo", u.x_lo},       {"x_hi", u.x_hi}, {"y_lo", u.y_lo}, {"y_hi", u.y_hi}};
}

UnivariateInstance univariate_from_json(const json& j) {
    UnivariateInstance u;
    try {
        u.a = field<double>(j, "a");
        u.b = field<std::vector<double>>(j, "b");
        u.c = field<std::vector<double>>(j, "c");
        u.r = field<std::vector<double>>(j, "r");
        u.x_lo = j.value("x_lo", 0.0);
        u.x_hi = j.value("x_hi", 1.0);
        u.y_lo = j.contains("y_lo") ? j.at("y_lo").get<std::vector<double>>() : std::vector<double>(u.r.size(), 1.0);
        u.y_hi = j.contains("y_hi") ? j.at("y_hi").get<std::vector<double>>() : std::vector<double>(u.r.size(), 2.0);
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("malformed instance: ") + e.what());
    }
    u.validate();
    return u;
}

}  // namespace fracx
