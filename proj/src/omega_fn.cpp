#include "plsemi/omega_fn.hpp"

#include <json.hpp>

#include <utility>

namespace plsemi {

namespace {

PLFn pinned_at_zero(PLFn part) {
    if (part.first_u() == 0) return part;
    if (part.first_u() > 0) {
        std::vector<Breakpoint> pts;
        pts.reserve(part.points().size() + 1);
        pts.push_back({Rational(0), part.first_v()});
        pts.insert(pts.end(), part.points().begin(), part.points().end());
        return PLFn(std::move(pts));
    }
    throw std::invalid_argument("OmegaFn: first breakpoint abscissa must be 0");
}

}  // namespace

OmegaFn::OmegaFn(Rational minus_one_value, PLFn part)
    : minus_one_(std::move(minus_one_value)), part_(std::move(part)) {
    if (part_.first_u() != 0)
        throw std::invalid_argument("OmegaFn: first breakpoint abscissa must be 0");
}

OmegaFn::OmegaFn(Rational minus_one_value, std::vector<Breakpoint> pts)
    : OmegaFn(std::move(minus_one_value), PLFn(std::move(pts))) {}

OmegaFn OmegaFn::from_part(Rational minus_one_value, PLFn part) {
    return OmegaFn(std::move(minus_one_value), pinned_at_zero(std::move(part)));
}

Rational OmegaFn::eval(const Rational& u) const {
    if (u == Rational(-1)) return minus_one_;
    if (u < 0) throw std::domain_error("OmegaFn::eval: " + u.str() + " is not a point of Omega");
    return part_.eval(u);
}

OmegaFn OmegaFn::canonicalized() const {
    return OmegaFn(minus_one_, pinned_at_zero(part_.canonicalized()));
}

bool OmegaFn::is_canonical() const {
    return *this == canonicalized();
}

OmegaFn canonicalize(const OmegaFn& x) { return x.canonicalized(); }

CMembership in_C(const OmegaFn& x) {
    const Rational zero(0), one(1);
    if (x.minus_one_value() < zero || x.minus_one_value() > one)
        return {false, "range: x(-1) = " + x.minus_one_value().str() + " outside [0,1]"};
    const auto& pts = x.breakpoints();
    for (const Breakpoint& p : pts)
        if (p.v < zero || p.v > one)
            return {false, "range: x(" + p.u.str() + ") = " + p.v.str() + " outside [0,1]"};
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (abs(pts[i].v - pts[i - 1].v) > pts[i].u - pts[i - 1].u)
            return {false, "Lipschitz: slope " + ((pts[i].v - pts[i - 1].v) / (pts[i].u - pts[i - 1].u)).str() +
                               " on [" + pts[i - 1].u.str() + ", " + pts[i].u.str() + "]"};
    }
    return {true, std::nullopt};
}

Rational sup_dist(const OmegaFn& x, const OmegaFn& y) {
    Rational best = abs(x.minus_one_value() - y.minus_one_value());
    const Rational tail = sup_abs_diff(x.part(), y.part());
    return max(best, tail);
}

PLFn alpha_fn(const OmegaFn& x) {
    const CMembership m = in_C(x);
    if (!m.in_C)
        throw std::domain_error("alpha_fn: x is not in C (" + m.violation.value_or("") + ")");
    return pl_max(tail_sup(x.part()), PLFn::constant(x.minus_one_value()));
}

OmegaFn lin_comb(const Rational& a, const OmegaFn& x, const Rational& b, const OmegaFn& y) {
    return OmegaFn::from_part(a * x.minus_one_value() + b * y.minus_one_value(),
                              x.part().scaled(a) + y.part().scaled(b));
}

std::string to_json(const OmegaFn& x) {
    nlohmann::json j;
    j["minus_one"] = x.minus_one_value().str();
    nlohmann::json bps = nlohmann::json::array();
    for (const Breakpoint& p : x.breakpoints()) bps.push_back({p.u.str(), p.v.str()});
    j["breakpoints"] = bps;
    return j.dump();
}

namespace {

Rational rational_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return Rational(BigInt(j.get<long>()));
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    throw std::invalid_argument("rational literal must be an integer or a \"p/q\" string");
}

}  // namespace

OmegaFn omega_fn_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("OmegaFn: malformed JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("minus_one") || !j.contains("breakpoints"))
        throw std::invalid_argument("OmegaFn: record must contain \"minus_one\" and \"breakpoints\"");
    const Rational minus_one = rational_from_json(j["minus_one"]);
    std::vector<Breakpoint> pts;
    for (const auto& pair : j["breakpoints"]) {
        if (!pair.is_array() || pair.size() != 2)
            throw std::invalid_argument("OmegaFn: each breakpoint must be a [\"u\",\"v\"] pair");
        pts.push_back({rational_from_json(pair[0]), rational_from_json(pair[1])});
    }
    return OmegaFn(minus_one, std::move(pts));
}

}  // namespace plsemi
