#include "flab/expr_json.hpp"

#include <initializer_list>
#include <set>

namespace flab {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

void only_fields(const json& j, std::initializer_list<const char*> allowed)
{
    std::set<std::string> ok{"kind"};
    for (const char* a : allowed) ok.insert(a);
    for (const auto& [key, value] : j.items()) {
        if (!ok.count(key)) fail("unexpected field '" + key + "' for kind '" + j["kind"].get<std::string>() + "'");
    }
}

const json& field(const json& j, const char* name)
{
    auto it = j.find(name);
    if (it == j.end()) fail(std::string("missing field '") + name + "'");
    return *it;
}

double number(const json& j, const char* name)
{
    const json& v = field(j, name);
    if (!v.is_number()) fail(std::string("field '") + name + "' must be a number");
    return v.get<double>();
}

std::vector<double> numbers(const json& v, const char* what)
{
    if (!v.is_array()) fail(std::string(what) + " must be an array of numbers");
    std::vector<double> out;
    for (const json& e : v) {
        if (!e.is_number()) fail(std::string(what) + " must be an array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

} // namespace

cplx complex_from_json(const json& j)
{
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    fail("complex value must be a number or [re, im]");
}

json complex_to_json(cplx c)
{
    if (c.imag() == 0.0) return c.real();
    return json::array({c.real(), c.imag()});
}

Function function_from_json(const json& j)
{
    if (!j.is_object()) fail("function expression must be a JSON object");
    const json& k = field(j, "kind");
    if (!k.is_string()) fail("'kind' must be a string");
    const std::string kind = k.get<std::string>();

    if (kind == "gaussian") {
        only_fields(j, {"a"});
        return Function::gaussian(number(j, "a"));
    }
    if (kind == "laplace") {
        only_fields(j, {"a"});
        return Function::laplace(number(j, "a"));
    }
    if (kind == "indicator") {
        only_fields(j, {"l", "r"});
        return Function::indicator(number(j, "l"), number(j, "r"));
    }
    if (kind == "poisson") {
        only_fields(j, {"u"});
        return Function::poisson_kernel(number(j, "u"));
    }
    if (kind == "fejer") {
        only_fields(j, {"t"});
        return Function::fejer_kernel(number(j, "t"));
    }
    if (kind == "dirichlet") {
        only_fields(j, {"t"});
        return Function::dirichlet_kernel(number(j, "t"));
    }
    if (kind == "gauss_weierstrass") {
        only_fields(j, {"alpha"});
        return Function::gauss_weierstrass(number(j, "alpha"));
    }
    if (kind == "bump") {
        only_fields(j, {});
        return Function::bump();
    }
    if (kind == "piecewise_polynomial") {
        only_fields(j, {"breakpoints", "coefficients"});
        std::vector<double> breaks = numbers(field(j, "breakpoints"), "breakpoints");
        const json& cs = field(j, "coefficients");
        if (!cs.is_array()) fail("coefficients must be an array of arrays");
        std::vector<std::vector<double>> coeffs;
        for (const json& c : cs) coeffs.push_back(numbers(c, "coefficients entry"));
        return Function::piecewise_polynomial(std::move(breaks), std::move(coeffs));
    }
    if (kind == "x_times") {
        only_fields(j, {"inner"});
        return Function::x_times(function_from_json(field(j, "inner")));
    }
    if (kind == "sum" || kind == "product") {
        const char* key = kind == "sum" ? "terms" : "factors";
        only_fields(j, {key});
        const json& items = field(j, key);
        if (!items.is_array() || items.empty()) fail(std::string("'") + key + "' must be a non-empty array");
        Function acc = function_from_json(items[0]);
        for (std::size_t i = 1; i < items.size(); ++i) {
            Function next = function_from_json(items[i]);
            acc = kind == "sum" ? Function::sum(acc, next) : Function::product(acc, next);
        }
        return acc;
    }
    if (kind == "scalar") {
        only_fields(j, {"c", "inner"});
        return function_from_json(field(j, "inner")).scaled(complex_from_json(field(j, "c")));
    }
    if (kind == "shift") {
        only_fields(j, {"t", "inner"});
        return function_from_json(field(j, "inner")).shifted(number(j, "t"));
    }
    if (kind == "dilate") {
        only_fields(j, {"k", "inner"});
        return function_from_json(field(j, "inner")).dilated(number(j, "k"));
    }
    if (kind == "modulate") {
        only_fields(j, {"omega", "inner"});
        return function_from_json(field(j, "inner")).modulated(number(j, "omega"));
    }
    if (kind == "reflect") {
        only_fields(j, {"inner"});
        return function_from_json(field(j, "inner")).reflected();
    }
    if (kind == "conjugate") {
        only_fields(j, {"inner"});
        return function_from_json(field(j, "inner")).conjugated();
    }
    if (kind == "derivative") {
        only_fields(j, {"inner"});
        return function_from_json(field(j, "inner")).derivative();
    }
    fail("unknown function kind '" + kind + "'");
}

Function parse_function(std::string_view text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
    return function_from_json(j);
}

json function_to_json(const Function& f)
{
    const auto& p = f.parameters();
    const auto& kids = f.children();
    switch (f.kind()) {
    case Kind::Gaussian: return {{"kind", "gaussian"}, {"a", p[0]}};
    case Kind::Laplace: return {{"kind", "laplace"}, {"a", p[0]}};
    case Kind::Indicator: return {{"kind", "indicator"}, {"l", p[0]}, {"r", p[1]}};
    case Kind::PoissonKernel: return {{"kind", "poisson"}, {"u", p[0]}};
    case Kind::FejerKernel: return {{"kind", "fejer"}, {"t", p[0]}};
    case Kind::DirichletKernel: return {{"kind", "dirichlet"}, {"t", p[0]}};
    case Kind::GaussWeierstrass: return {{"kind", "gauss_weierstrass"}, {"alpha", p[0]}};
    case Kind::Bump: return {{"kind", "bump"}};
    case Kind::PiecewisePolynomial:
        return {{"kind", "piecewise_polynomial"}, {"breakpoints", p}, {"coefficients", f.polynomial_coefficients()}};
    case Kind::XTimes: return {{"kind", "x_times"}, {"inner", function_to_json(kids[0])}};
    case Kind::Sum:
        return {{"kind", "sum"}, {"terms", json::array({function_to_json(kids[0]), function_to_json(kids[1])})}};
    case Kind::Product:
        return {{"kind", "product"}, {"factors", json::array({function_to_json(kids[0]), function_to_json(kids[1])})}};
    case Kind::ScalarMultiple:
        return {{"kind", "scalar"}, {"c", complex_to_json(f.coefficient())}, {"inner", function_to_json(kids[0])}};
    case Kind::Shift: return {{"kind", "shift"}, {"t", p[0]}, {"inner", function_to_json(kids[0])}};
    case Kind::Dilate: return {{"kind", "dilate"}, {"k", p[0]}, {"inner", function_to_json(kids[0])}};
    case Kind::Modulate: return {{"kind", "modulate"}, {"omega", p[0]}, {"inner", function_to_json(kids[0])}};
    case Kind::Reflect: return {{"kind", "reflect"}, {"inner", function_to_json(kids[0])}};
    case Kind::Conjugate: return {{"kind", "conjugate"}, {"inner", function_to_json(kids[0])}};
    case Kind::Derivative: return {{"kind", "derivative"}, {"inner", function_to_json(kids[0])}};
    case Kind::Opaque: break;
    }
    throw Error(ErrorCode::InvalidArgument, "computed function '" + f.describe() + "' has no JSON form");
}

MeasureSpec measure_from_json(const json& j)
{
    if (!j.is_object()) fail("measure must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key != "atoms" && key != "density") fail("unexpected measure field '" + key + "'");
    }
    MeasureSpec mu;
    if (auto it = j.find("atoms"); it != j.end()) {
        if (!it->is_array()) fail("'atoms' must be an array");
        for (const json& a : *it) {
            if (!a.is_object()) fail("atom must be an object");
            for (const auto& [key, value] : a.items()) {
                if (key != "location" && key != "mass") fail("unexpected atom field '" + key + "'");
            }
            mu.atoms.push_back({number(a, "location"), complex_from_json(field(a, "mass"))});
        }
    }
    if (auto it = j.find("density"); it != j.end()) mu.density = function_from_json(*it);
    mu.validate();
    return mu;
}

} // namespace flab
