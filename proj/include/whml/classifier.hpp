#pragma once

// Regime classification: theorem verdicts, numeric winding verdicts, or both.

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>

#include "json.hpp"

#include "contour.hpp"
#include "error.hpp"
#include "symbols.hpp"
#include "transcendental.hpp"

namespace whml {

enum class ClassRegime { LOW, HIGH, INADMISSIBLE };
enum class ClassifyMode { THEOREM, NUMERIC, BOTH };

inline const char* class_regime_name(ClassRegime r)
{
    switch (r) {
    case ClassRegime::LOW: return "LOW";
    case ClassRegime::HIGH: return "HIGH";
    case ClassRegime::INADMISSIBLE: return "INADMISSIBLE";
    }
    return "?";
}

inline const char* classify_mode_name(ClassifyMode m)
{
    switch (m) {
    case ClassifyMode::THEOREM: return "theorem";
    case ClassifyMode::NUMERIC: return "numeric";
    case ClassifyMode::BOTH: return "both";
    }
    return "?";
}

struct ClassifyOptions {
    // width of the band around s = 1 + 1/p + alpha_c treated as the critical value
    double critical_tol = 1e-9;
    double fredholm_tol = default_fredholm_tol;
    int n_base = 512;
};

struct ClassificationReport {
    ClassRegime regime = ClassRegime::INADMISSIBLE;
    bool bounded = false;
    bool fredholm = false;
    std::optional<int> winding, index;
    std::optional<bool> kernel_trivial, invertible;
    std::optional<double> alpha_c, critical_s;
    std::string notes;
    ClassifyMode mode = ClassifyMode::THEOREM;
    std::optional<double> min_modulus;
    std::optional<bool> consistent;

    nlohmann::ordered_json to_json() const
    {
        nlohmann::ordered_json j;
        auto opt = [](const auto& o) -> nlohmann::ordered_json {
            if (o)
                return *o;
            return nullptr;
        };
        j["regime"] = class_regime_name(regime);
        j["bounded"] = bounded;
        j["fredholm"] = fredholm;
        j["winding"] = opt(winding);
        j["index"] = opt(index);
        j["kernel_trivial"] = opt(kernel_trivial);
        j["invertible"] = opt(invertible);
        j["alpha_c"] = opt(alpha_c);
        j["critical_s"] = opt(critical_s);
        j["notes"] = notes;
        j["mode"] = classify_mode_name(mode);
        if (mode != ClassifyMode::THEOREM)
            j["min_modulus"] = opt(min_modulus);
        if (mode == ClassifyMode::BOTH)
            j["consistent"] = opt(consistent);
        return j;
    }

    std::string to_text() const
    {
        auto b = [](std::optional<bool> v) -> std::string { return v ? (*v ? "true" : "false") : "null"; };
        auto i = [](std::optional<int> v) { return v ? std::to_string(*v) : std::string("null"); };
        auto d = [](std::optional<double> v) {
            if (!v)
                return std::string("null");
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.12g", *v);
            return std::string(buf);
        };
        std::string s;
        s += std::string("regime: ") + class_regime_name(regime) + "\n";
        s += "bounded: " + b(bounded) + "\n";
        s += "fredholm: " + b(fredholm) + "\n";
        s += "winding: " + i(winding) + "\n";
        s += "index: " + i(index) + "\n";
        s += "kernel_trivial: " + b(kernel_trivial) + "\n";
        s += "invertible: " + b(invertible) + "\n";
        s += "alpha_c: " + d(alpha_c) + "\n";
        s += "critical_s: " + d(critical_s) + "\n";
        s += "notes: " + notes + "\n";
        s += std::string("mode: ") + classify_mode_name(mode) + "\n";
        if (mode != ClassifyMode::THEOREM)
            s += "min_modulus: " + d(min_modulus) + "\n";
        if (mode == ClassifyMode::BOTH)
            s += "consistent: " + b(consistent) + "\n";
        return s;
    }
};

namespace detail {

inline void add_note(std::string& notes, const std::string& n)
{
    if (!notes.empty())
        notes += "; ";
    notes += n;
}

inline constexpr double boundary_tol = 1e-9;

// regime window and HIGH critical data shared by both routes
inline ClassificationReport classify_frame(double alpha, double p, double s)
{
    if (!(alpha > 0.0 && alpha < 1.0))
        fail(errc::domain, "classify requires 0 < alpha < 1");
    if (!(p > 1.0 && std::isfinite(p)))
        fail(errc::domain, "classify requires 1 < p < infinity");
    if (!std::isfinite(s))
        fail(errc::domain, "classify requires finite s");
    ClassificationReport r;
    const double ip = 1.0 / p;
    r.bounded = 2.0 * alpha - 1.0 + ip < s;
    for (double edge : {ip, 1.0 + ip, 2.0 + ip})
        if (std::abs(s - edge) <= boundary_tol) {
            r.regime = ClassRegime::INADMISSIBLE;
            add_note(r.notes, "s lies on a window boundary");
            return r;
        }
    if (s > ip && s < 1.0 + ip) {
        if (alpha < 0.5) {
            r.regime = ClassRegime::LOW;
        } else {
            r.regime = ClassRegime::INADMISSIBLE;
            add_note(r.notes, "1/p < s < 1+1/p is covered only for alpha < 1/2");
        }
    } else if (s > 1.0 + ip && s < 2.0 + ip) {
        r.regime = ClassRegime::HIGH;
        r.alpha_c = whml::alpha_c(alpha);
        r.critical_s = 1.0 + ip + *r.alpha_c;
        if (alpha < 0.5)
            add_note(r.notes, "alpha < 1/2 in the high window restricts which Mellin lemma applies; "
                              "verdict unaffected");
    } else {
        r.regime = ClassRegime::INADMISSIBLE;
        add_note(r.notes, "s outside 1/p < s < 2+1/p");
    }
    if (!r.bounded)
        add_note(r.notes, "s <= 2 alpha - 1 + 1/p: boundedness not guaranteed");
    return r;
}

inline ClassificationReport classify_theorem(double alpha, double p, double s, const ClassifyOptions& o)
{
    ClassificationReport r = classify_frame(alpha, p, s);
    r.mode = ClassifyMode::THEOREM;
    if (r.regime == ClassRegime::LOW) {
        r.fredholm = true;
        r.winding = 0;
        r.index = 0;
        r.kernel_trivial = true;
        r.invertible = true;
    } else if (r.regime == ClassRegime::HIGH) {
        double gap = s - *r.critical_s;
        if (std::abs(gap) <= o.critical_tol) {
            r.fredholm = false;
            r.invertible = false;
            add_note(r.notes, "s at the critical value 1+1/p+alpha_c: not Fredholm");
        } else if (gap < 0.0) {
            r.fredholm = true;
            r.winding = -1;
            r.index = 0;
            r.kernel_trivial = true;
            r.invertible = true;
        } else {
            r.fredholm = true;
            r.winding = 0;
            r.index = -1;
            r.kernel_trivial = true;
            r.invertible = false;
        }
    }
    return r;
}

inline ClassificationReport classify_numeric(double alpha, double p, double s, const ClassifyOptions& o)
{
    ClassificationReport r = classify_frame(alpha, p, s);
    r.mode = ClassifyMode::NUMERIC;
    if (r.regime == ClassRegime::INADMISSIBLE)
        return r;
    SpectralParams sp(alpha, p, s, r.regime == ClassRegime::LOW ? Regime::LOW : Regime::HIGH);
    SymbolLoop loop = build_loop(sp, o.n_base);
    r.min_modulus = min_modulus(loop);
    if (!(*r.min_modulus > o.fredholm_tol)) {
        r.fredholm = false;
        r.invertible = false;
        add_note(r.notes, "symbol modulus within fredholm tolerance: not Fredholm");
        return r;
    }
    r.fredholm = true;
    int w = winding_number(loop, o.fredholm_tol);
    r.winding = w;
    // the symbol operator has index -w; in the high window A sits one below it
    r.index = r.regime == ClassRegime::LOW ? -w : -w - 1;
    if (*r.index != 0)
        r.invertible = false;
    add_note(r.notes, "kernel_trivial is theorem-backed only; left null in numeric mode");
    return r;
}

} // namespace detail

inline ClassificationReport classify(double alpha, double p, double s, ClassifyMode mode,
                                     const ClassifyOptions& o = {})
{
    if (mode == ClassifyMode::THEOREM)
        return detail::classify_theorem(alpha, p, s, o);
    if (mode == ClassifyMode::NUMERIC)
        return detail::classify_numeric(alpha, p, s, o);
    ClassificationReport th = detail::classify_theorem(alpha, p, s, o);
    ClassificationReport nu = detail::classify_numeric(alpha, p, s, o);
    bool same = th.fredholm == nu.fredholm &&
                (!th.fredholm || (th.winding == nu.winding && th.index == nu.index));
    ClassificationReport r = th;
    r.mode = ClassifyMode::BOTH;
    r.min_modulus = nu.min_modulus;
    r.consistent = same;
    if (!nu.fredholm && th.fredholm) {
        r.fredholm = false;
        r.winding.reset();
        r.index.reset();
        r.kernel_trivial.reset();
        r.invertible = false;
        detail::add_note(r.notes, "numeric route finds the symbol modulus within tolerance; "
                                  "reporting not Fredholm");
    }
    if (!same)
        detail::add_note(r.notes, "theorem and numeric verdicts differ");
    return r;
}

} // namespace whml
