#pragma once

/// @file report.hpp
/// Run manifests and report documents.  The structured JSON body is the
/// contract: it is byte-deterministic for a given manifest (keys sorted,
/// no timestamps), while wall-clock data lives in a separate header
/// object.  The human-readable rendering is derived from the body, never
/// hand-assembled alongside it.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "guess.hpp"
#include "pipeline.hpp"
#include "stepset.hpp"

namespace walkguess::report {

using json = nlohmann::json; // object type is std::map: keys serialize sorted

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return std::string(buf);
}

constexpr const char* tool_version = "1.0.0";

/// Everything that determines a run's output.  The identifier hashes the
/// semantic fields only, so replaying a manifest reproduces it.
struct RunManifest {
    std::string command;   // enum | guess | check | replicate
    std::string stepset;   // canonical step-set document ("" when terms came from a file)
    std::string mode;      // canonical mode text ("" when not applicable)
    std::string terms_source; // "dp" or "file"
    long terms = 0;
    std::string ansatz;
    long max_order = 0;
    long max_degree = 0;
    double split = 0.6;
    long min_verify = 10;
    std::uint64_t budget_seconds = 0;

    std::string run_id() const {
        std::ostringstream key;
        key << tool_version << '\n'
            << command << '\n'
            << stepset << '\n'
            << mode << '\n'
            << terms_source << '\n'
            << terms << '\n'
            << ansatz << '\n'
            << max_order << '\n'
            << max_degree << '\n'
            << split << '\n'
            << min_verify << '\n'
            << budget_seconds << '\n';
        return hex64(fnv1a64(key.str()));
    }

    json to_json() const {
        json j;
        j["tool_version"] = tool_version;
        j["command"] = command;
        j["stepset"] = stepset;
        j["mode"] = mode;
        j["terms_source"] = terms_source;
        j["terms"] = terms;
        j["ansatz"] = ansatz;
        j["max_order"] = max_order;
        j["max_degree"] = max_degree;
        j["split"] = split;
        j["min_verify"] = min_verify;
        j["budget_seconds"] = budget_seconds;
        j["run_id"] = run_id();
        return j;
    }

    static RunManifest from_json(const json& j) {
        RunManifest m;
        m.command = j.at("command").get<std::string>();
        m.stepset = j.at("stepset").get<std::string>();
        m.mode = j.at("mode").get<std::string>();
        m.terms_source = j.at("terms_source").get<std::string>();
        m.terms = j.at("terms").get<long>();
        m.ansatz = j.at("ansatz").get<std::string>();
        m.max_order = j.at("max_order").get<long>();
        m.max_degree = j.at("max_degree").get<long>();
        m.split = j.at("split").get<double>();
        m.min_verify = j.at("min_verify").get<long>();
        m.budget_seconds = j.at("budget_seconds").get<std::uint64_t>();
        return m;
    }
};

inline json guess_report_to_json(const ansatz::GuessReport& r) {
    json j;
    j["status"] = ansatz::to_string(r.status);
    j["route"] = ansatz::to_string(r.route);
    j["relation"] = r.relation_text;
    j["fit_terms"] = r.fit_terms;
    j["verify_terms"] = r.verify_terms;
    j["verification_depth"] = r.verification_depth;
    j["found_order"] = r.found_order;
    j["found_degree"] = r.found_degree;
    j["max_order_bound"] = r.max_order_bound;
    j["max_degree_bound"] = r.max_degree_bound;
    j["kernel_dimension"] = r.kernel_dimension;
    j["primes_used"] = r.primes_used;
    j["skipped_indices"] = r.skipped_indices;
    j["note"] = r.note;
    return j;
}

inline json pipeline_report_to_json(const ansatz::PipelineReport& p, bool include_terms) {
    json j;
    j["overall"] = ansatz::to_string(p.overall);
    json comp;
    comp["period"] = p.compression.period;
    comp["residue"] = p.compression.residue;
    comp["all_zero"] = p.compression.all_zero;
    comp["compressed_terms"] = static_cast<long>(p.compression.compressed.size());
    j["compression"] = comp;
    json results = json::array();
    for (const auto& [name, r] : p.results) {
        json entry;
        entry["ansatz"] = name;
        entry["report"] = guess_report_to_json(r);
        results.push_back(entry);
    }
    j["results"] = results;
    if (include_terms) {
        json terms = json::array();
        for (const exact::Rat& v : p.table.values) terms.push_back(exact::to_string(v));
        j["terms"] = terms;
    }
    return j;
}

/// Report = volatile header (timestamps, elapsed) + deterministic body.
struct ReportDocument {
    json header = json::object();
    json body = json::object();

    std::string serialize() const {
        json doc;
        doc["header"] = header;
        doc["body"] = body;
        return doc.dump(2) + "\n";
    }

    static ReportDocument deserialize(const std::string& text) {
        json doc = json::parse(text);
        ReportDocument d;
        d.header = doc.at("header");
        d.body = doc.at("body");
        return d;
    }

    std::string body_digest() const { return hex64(fnv1a64(body.dump())); }

    /// Human rendering, derived from the body alone.
    std::string human_text() const {
        std::ostringstream out;
        if (body.contains("manifest")) {
            const json& m = body["manifest"];
            out << "run " << m.value("run_id", std::string("?")) << " (" +
                       m.value("command", std::string("?")) + ")\n";
            if (!m.value("stepset", std::string()).empty())
                out << "steps:\n" << indent_block(m["stepset"].get<std::string>());
            if (!m.value("mode", std::string()).empty())
                out << "mode: " << m["mode"].get<std::string>() << "\n";
        }
        if (body.contains("pipeline")) {
            const json& p = body["pipeline"];
            out << "overall: " << p.value("overall", std::string("?")) << "\n";
            const json& comp = p["compression"];
            if (comp.value("all_zero", false))
                out << "sequence is identically zero\n";
            else if (comp.value("period", 1l) != 1)
                out << "support: indices = " << comp.value("residue", 0l) << " (mod "
                    << comp.value("period", 1l) << "), compressed before guessing\n";
            for (const json& entry : p.value("results", json::array())) {
                const json& r = entry["report"];
                out << "  [" << entry.value("ansatz", std::string("?")) << "] "
                    << r.value("status", std::string("?"));
                const std::string rel = r.value("relation", std::string());
                if (!rel.empty()) out << "\n      " << rel;
                if (r.value("status", std::string()) == "verified-conjecture")
                    out << "\n      held-out terms verified: "
                        << r.value("verification_depth", 0l) << " (route "
                        << r.value("route", std::string("?")) << ")";
                const std::string note = r.value("note", std::string());
                if (!note.empty()) out << "\n      note: " << note;
                out << "\n";
            }
        }
        if (body.contains("check")) {
            const json& c = body["check"];
            out << "check: " << c.value("status", std::string("?")) << ", depth "
                << c.value("depth", 0l) << "\n";
            if (c.contains("first_failure") && c["first_failure"].get<long>() >= 0)
                out << "first failing index: " << c["first_failure"].get<long>() << "\n";
        }
        if (body.contains("summary")) out << body["summary"].get<std::string>() << "\n";
        return out.str();
    }

private:
    static std::string indent_block(const std::string& text) {
        std::istringstream in(text);
        std::ostringstream out;
        std::string line;
        while (std::getline(in, line)) out << "  " << line << "\n";
        return out.str();
    }
};

/// Writes via a temporary in the same directory plus rename, so readers
/// never observe a half-written report.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path dir = path.parent_path();
    if (dir.empty()) dir = ".";
    std::filesystem::path tmp = dir / (path.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw error("cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out) throw error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

// ---------------------------------------------------------------------------
// terms files: one exact rational per line, `#`-prefixed header lines

inline std::string terms_file_text(const RunManifest& manifest,
                                   const std::vector<exact::Rat>& values) {
    std::ostringstream out;
    out << "# walkguess terms v1\n";
    out << "# run " << manifest.run_id() << "\n";
    if (!manifest.stepset.empty()) {
        std::istringstream in(manifest.stepset);
        std::string line;
        while (std::getline(in, line)) out << "# " << line << "\n";
    }
    if (!manifest.mode.empty()) out << "# mode " << manifest.mode << "\n";
    out << "# count " << values.size() << "\n";
    for (const exact::Rat& v : values) out << exact::to_string(v) << "\n";
    return out.str();
}

inline std::vector<exact::Rat> parse_terms_text(const std::string& text) {
    std::vector<exact::Rat> values;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;
        std::size_t end = line.find_last_not_of(" \t\r");
        try {
            values.push_back(exact::rat_from_string(line.substr(start, end - start + 1)));
        } catch (const parse_error& e) {
            throw parse_error("line " + std::to_string(lineno) + ": " + e.what(), lineno);
        }
    }
    return values;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace walkguess::report
