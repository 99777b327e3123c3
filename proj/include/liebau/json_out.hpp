#pragma once

/**
 * @file json_out.hpp
 * @brief Deterministic JSON and CSV emission. Numbers are printed with 17
 * significant digits so that output round-trips bit-exactly; non-finite
 * values become null.
 */

#include "liebau/certify.hpp"
#include "liebau/greens.hpp"
#include "liebau/pump.hpp"
#include "liebau/solve.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace liebau::io {

inline std::string number(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string quoted(std::string_view s) {
    std::string out = "\"";
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    return out + "\"";
}

/// Streaming writer with two-space indentation and insertion-ordered keys.
class JsonWriter {
public:
    JsonWriter& begin_object() { open('{'); return *this; }
    JsonWriter& end_object() { close('}'); return *this; }
    JsonWriter& begin_array() { open('['); return *this; }
    JsonWriter& end_array() { close(']'); return *this; }

    JsonWriter& key(std::string_view k) {
        separator();
        out_ += quoted(k) + ": ";
        pending_key_ = true;
        return *this;
    }

    JsonWriter& value(double v) { return raw(number(v)); }
    JsonWriter& value(int v) { return raw(std::to_string(v)); }
    JsonWriter& value(std::size_t v) { return raw(std::to_string(v)); }
    JsonWriter& value(bool v) { return raw(v ? "true" : "false"); }
    JsonWriter& value(std::string_view v) { return raw(quoted(v)); }
    JsonWriter& value(const char* v) { return raw(quoted(v)); }
    JsonWriter& null() { return raw("null"); }
    JsonWriter& value(const std::optional<double>& v) { return v ? value(*v) : null(); }

    template <class T>
    JsonWriter& field(std::string_view k, const T& v) { return key(k).value(v); }

    JsonWriter& array(std::string_view k, const std::vector<double>& v) {
        key(k).begin_array();
        for (double x : v) value(x);
        return end_array();
    }

    const std::string& str() const noexcept { return out_; }
    std::string finish() const { return out_ + "\n"; }

private:
    struct Level {
        char kind;
        bool empty = true;
    };

    void separator() {
        if (pending_key_) {
            pending_key_ = false;
            return;
        }
        if (stack_.empty()) return;
        if (!stack_.back().empty) out_ += ",";
        stack_.back().empty = false;
        out_ += "\n" + std::string(2 * stack_.size(), ' ');
    }

    JsonWriter& raw(std::string_view s) {
        separator();
        out_ += s;
        return *this;
    }

    void open(char c) {
        separator();
        out_ += c;
        stack_.push_back({c});
    }

    void close(char c) {
        const bool empty = stack_.back().empty;
        stack_.pop_back();
        if (!empty) out_ += "\n" + std::string(2 * stack_.size(), ' ');
        out_ += c;
    }

    std::string out_;
    std::vector<Level> stack_;
    bool pending_key_ = false;
};

inline void write(JsonWriter& w, const Condition& c) {
    w.begin_object()
        .field("name", c.name)
        .field("lhs", c.lhs)
        .field("relation", to_string(c.relation))
        .field("rhs", c.rhs)
        .field("margin", c.margin)
        .field("relative_margin", c.relative_margin())
        .field("satisfied", c.satisfied)
        .field("required", c.required);
    if (c.inapplicable) w.field("inapplicable", true);
    if (!c.note.empty()) w.field("note", c.note);
    w.end_object();
}

inline void write(JsonWriter& w, const Certificate& cert) {
    w.begin_object().field("theorem", to_string(cert.theorem));
    w.key("params").begin_object()
        .field("m", cert.params.m)
        .field("kappa", cert.params.kappa)
        .field("R1", cert.params.R1)
        .field("R2", cert.params.R2)
        .end_object();
    w.field("verdict", to_string(cert.verdict));
    w.key("localization").begin_object().field("lower", cert.lower).field("upper", cert.upper).end_object();
    w.field("c_m", cert.c_m).field("K0", cert.K0).field("m_max", cert.m_max);
    w.field("extrema_tol", cert.extrema_tol);
    w.field("min_relative_margin", cert.min_relative_margin());
    w.key("conditions").begin_array();
    for (const auto& c : cert.conditions) write(w, c);
    w.end_array();
    w.key("values").begin_object();
    for (const auto& [k, v] : cert.values) w.field(k, v);
    w.end_object();
    w.key("flags").begin_array();
    for (const auto& f : cert.flags) w.value(f);
    w.end_array();
    w.end_object();
}

inline void write(JsonWriter& w, const GreensKernel& k) {
    w.begin_object()
        .field("a", k.a())
        .field("m", k.m())
        .field("T", k.period())
        .field("case", to_string(k.kernel_case()))
        .field("m_max", k.m_max())
        .field("K0", k.K0())
        .field("Kmin", k.Kmin())
        .field("Kmax", k.Kmax())
        .field("argmax", k.argmax())
        .field("c_m", k.cone_constant())
        .field("integral", 1.0 / (k.m() * k.m()))
        .end_object();
}

inline void write(JsonWriter& w, const GridSolution& s) {
    w.begin_object()
        .field("quantity", s.quantity)
        .field("T", s.T)
        .field("N", s.size())
        .field("iterations", s.iterations)
        .field("converged", s.converged)
        .field("polished", s.polished)
        .field("sup_residual", s.sup_residual)
        .field("bc_mismatch", s.bc_mismatch)
        .field("min_x", s.min())
        .field("max_x", s.max())
        .field("mean_x", s.mean())
        .end_object();
}

inline void write(JsonWriter& w, const PumpReport& r) {
    w.begin_object()
        .field("u_mean", r.u_mean)
        .field("e_mean", r.e_mean)
        .field("e_mean_over_c", r.e_mean_over_c)
        .field("delta", r.delta)
        .field("uprime_l2sq", r.uprime_l2sq)
        .field("identity_residual", r.identity_residual)
        .field("pumping_detected", r.pumping_detected)
        .end_object();
}

template <class T>
std::string to_json(const T& v) {
    JsonWriter w;
    write(w, v);
    return w.finish();
}

/// CSV with header t,x[,u]; u = x^mu is added when mu is given.
inline std::string solution_csv(const GridSolution& s, std::optional<double> mu = std::nullopt) {
    const bool with_u = mu.has_value();
    const double e = mu.value_or(1.0);
    std::string out = with_u ? "t,x,u\n" : "t,x\n";
    for (std::size_t j = 0; j < s.size(); ++j) {
        out += number(s.nodes[j]) + "," + number(s.values[j]);
        if (with_u) out += "," + number(std::pow(s.values[j], e));
        out += "\n";
    }
    return out;
}

/// CSV of tau, K(tau) on n + 1 points of [0, T].
inline std::string kernel_csv(const GreensKernel& k, int n = 256) {
    std::string out = "tau,K\n";
    for (int j = 0; j <= n; ++j) {
        const double tau = k.period() * j / n;
        out += number(tau) + "," + number(k(tau)) + "\n";
    }
    return out;
}

}  // namespace liebau::io
