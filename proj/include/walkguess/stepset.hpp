#pragma once

/// @file stepset.hpp
/// Step sets for walks in dimension 1..3, counting modes, and the exact
/// counting tables they produce.  The step-set text document round-trips
/// bit-exactly:
///
///   dim 1
///   steps (-1) (1)
///   weights 1/3 2/3        (optional line)

#include <array>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rational.hpp"

namespace walkguess::model {

using exact::Int;
using exact::Rat;

struct StepSet {
    int dim = 1;
    std::vector<std::array<int, 3>> steps; // unused coordinates are 0
    std::optional<std::vector<Rat>> weights;

    StepSet() = default;
    /// 1D convenience constructor.
    StepSet(std::initializer_list<int> s) : dim(1) {
        for (int v : s) steps.push_back({v, 0, 0});
        validate();
    }
    StepSet(int d, std::vector<std::array<int, 3>> s,
            std::optional<std::vector<Rat>> w = std::nullopt)
        : dim(d), steps(std::move(s)), weights(std::move(w)) {
        validate();
    }

    void validate() const {
        if (dim < 1 || dim > 3) throw domain_error("dimension must be 1, 2 or 3");
        if (steps.empty()) throw domain_error("step set must be nonempty");
        for (std::size_t i = 0; i < steps.size(); ++i) {
            for (int d = dim; d < 3; ++d)
                if (steps[i][d] != 0) throw domain_error("step coordinate beyond dimension");
            for (std::size_t j = i + 1; j < steps.size(); ++j)
                if (steps[i] == steps[j]) throw domain_error("duplicate step");
        }
        if (weights) {
            if (weights->size() != steps.size())
                throw domain_error("weights list length differs from steps");
            for (const Rat& w : *weights)
                if (w <= 0) throw domain_error("weights must be positive");
        }
    }

    bool has_weights() const { return weights.has_value(); }
    Rat weight(std::size_t i) const { return weights ? (*weights)[i] : Rat(1); }
    int max_positive_entry() const {
        int m = 0;
        for (const auto& s : steps)
            for (int d = 0; d < dim; ++d) m = std::max(m, s[d]);
        return m;
    }
    int min_entry(int d) const {
        int m = 0;
        for (const auto& s : steps) m = std::min(m, s[d]);
        return m;
    }

    bool operator==(const StepSet& o) const {
        return dim == o.dim && steps == o.steps && weights == o.weights;
    }
};

struct CountMode {
    enum class Kind { ReturnToOrigin, AnyEndpoint, EndpointSlice };
    Kind kind = Kind::ReturnToOrigin;
    std::array<int, 3> target{0, 0, 0}; // for EndpointSlice

    static CountMode zero() { return {Kind::ReturnToOrigin, {0, 0, 0}}; }
    static CountMode any() { return {Kind::AnyEndpoint, {0, 0, 0}}; }
    static CountMode slice(std::array<int, 3> tgt) { return {Kind::EndpointSlice, tgt}; }

    void validate(int dim) const {
        if (kind == Kind::EndpointSlice) {
            for (int d = 0; d < 3; ++d) {
                if (target[d] < 0) throw domain_error("slice target must be non-negative");
                if (d >= dim && target[d] != 0)
                    throw domain_error("slice target coordinate beyond dimension");
            }
        }
    }
    bool operator==(const CountMode& o) const {
        if (kind != o.kind) return false;
        return kind != Kind::EndpointSlice || target == o.target;
    }
};

struct CountTable {
    StepSet steps;
    CountMode mode;
    long order = 0;
    std::vector<Rat> values; // values[n], n = 0..order
    bool weights_normalized = false; // probability weights were rescaled to sum 1

    bool integral() const {
        for (const Rat& v : values)
            if (v.get_den() != 1) return false;
        return true;
    }
    std::vector<Int> integer_values() const {
        std::vector<Int> out;
        out.reserve(values.size());
        for (const Rat& v : values) {
            if (v.get_den() != 1) throw domain_error("table holds non-integer values");
            out.push_back(v.get_num());
        }
        return out;
    }
};

inline std::string stepset_to_string(const StepSet& s) {
    std::ostringstream os;
    os << "dim " << s.dim << "\n";
    os << "steps";
    for (const auto& st : s.steps) {
        os << " (";
        for (int d = 0; d < s.dim; ++d) {
            if (d) os << ",";
            os << st[d];
        }
        os << ")";
    }
    os << "\n";
    if (s.weights) {
        os << "weights";
        for (const Rat& w : *s.weights) os << " " << exact::to_string(w);
        os << "\n";
    }
    return os.str();
}

inline StepSet stepset_from_string(const std::string& text) {
    StepSet s;
    s.dim = 0;
    bool have_steps = false;
    std::istringstream is(text);
    std::string line;
    std::size_t offset = 0;
    while (std::getline(is, line)) {
        std::size_t line_start = offset;
        offset += line.size() + 1;
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key) || key[0] == '#') continue;
        if (key == "dim") {
            if (!(ls >> s.dim)) throw parse_error("expected dimension after 'dim'", line_start);
        } else if (key == "steps") {
            if (s.dim == 0) throw parse_error("'dim' must precede 'steps'", line_start);
            std::string tok;
            while (ls >> tok) {
                if (tok.size() < 2 || tok.front() != '(' || tok.back() != ')')
                    throw parse_error("step must look like (a[,b[,c]])", line_start);
                std::array<int, 3> st{0, 0, 0};
                std::istringstream ts(tok.substr(1, tok.size() - 2));
                std::string part;
                int d = 0;
                while (std::getline(ts, part, ',')) {
                    if (d >= s.dim) throw parse_error("too many coordinates in step", line_start);
                    try {
                        std::size_t used = 0;
                        st[d] = std::stoi(part, &used);
                        if (used != part.size()) throw std::invalid_argument(part);
                    } catch (const std::exception&) {
                        throw parse_error("bad step coordinate '" + part + "'", line_start);
                    }
                    ++d;
                }
                if (d != s.dim) throw parse_error("too few coordinates in step", line_start);
                s.steps.push_back(st);
            }
            have_steps = true;
        } else if (key == "weights") {
            std::vector<Rat> w;
            std::string tok;
            while (ls >> tok) w.push_back(exact::rat_from_string(tok));
            s.weights = std::move(w);
        } else {
            throw parse_error("unknown step-set field '" + key + "'", line_start);
        }
    }
    if (s.dim == 0) throw parse_error("missing 'dim' line", 0);
    if (!have_steps) throw parse_error("missing 'steps' line", 0);
    s.validate();
    return s;
}

inline std::string mode_to_string(const CountMode& m) {
    switch (m.kind) {
        case CountMode::Kind::ReturnToOrigin: return "zero";
        case CountMode::Kind::AnyEndpoint: return "any";
        case CountMode::Kind::EndpointSlice: {
            // print coordinates up to the last nonzero one (at least the first)
            std::string out = "slice ";
            int last = 0;
            for (int d = 2; d >= 0; --d)
                if (m.target[d] != 0) {
                    last = d;
                    break;
                }
            for (int d = 0; d <= last; ++d) {
                if (d) out += ",";
                out += std::to_string(m.target[d]);
            }
            return out;
        }
    }
    throw domain_error("unknown mode");
}

inline CountMode mode_from_string(const std::string& text) {
    if (text == "zero") return CountMode::zero();
    if (text == "any") return CountMode::any();
    const std::string prefix = "slice";
    if (text.compare(0, prefix.size(), prefix) == 0) {
        std::string rest = text.substr(prefix.size());
        std::array<int, 3> tgt{0, 0, 0};
        std::istringstream ts(rest);
        std::string part;
        int d = 0;
        while (std::getline(ts >> std::ws, part, ',')) {
            if (d >= 3) throw parse_error("too many slice coordinates", prefix.size());
            try {
                std::size_t used = 0;
                tgt[d] = std::stoi(part, &used);
                if (used != part.size()) throw std::invalid_argument(part);
            } catch (const std::exception&) {
                throw parse_error("bad slice coordinate '" + part + "'", prefix.size());
            }
            ++d;
        }
        if (d == 0) throw parse_error("slice mode needs a target", prefix.size());
        return CountMode::slice(tgt);
    }
    throw parse_error("unknown mode '" + text + "'", 0);
}

} // namespace walkguess::model
