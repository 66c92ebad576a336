// walkguess: exact enumeration of constrained lattice walks and automatic
// fitting of the relations their counting sequences satisfy.
//
// Verbs:
//   enum       write exact counts for a step set and endpoint mode
//   guess      fit polynomial / algebraic / recurrence / ODE ansatzes
//   check      re-verify a stored relation against a terms file
//   replicate  rerun the built-in case studies and diff their outcomes
//
// Exit codes: 0 success or verified conjecture; 2 no fit within bounds;
// 3 resource budget exceeded; 4 input or grammar error; 5 verification
// passed but skipped exceptional rows; 6 verification or replication
// failed; 1 unexpected internal error.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <walkguess/walkguess.hpp>

namespace wg = walkguess;
using wg::exact::Int;
using wg::exact::Rat;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_unexpected = 1;
constexpr int exit_no_fit = 2;
constexpr int exit_resource = 3;
constexpr int exit_input = 4;
constexpr int exit_partial = 5;
constexpr int exit_failed = 6;

std::string iso_timestamp() {
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return buf;
}

/// --steps accepts a step-set document path or an inline 1D list like
/// "-1,-2,3" (2D and 3D sets use the file form).
wg::model::StepSet load_stepset(const std::string& value) {
    if (value.empty()) throw wg::parse_error("empty --steps value", 0);
    if (value.find('\n') != std::string::npos) return wg::model::stepset_from_string(value);
    if (std::filesystem::exists(value))
        return wg::model::stepset_from_string(wg::report::read_file(value));
    // inline form: comma-separated 1D steps
    wg::model::StepSet s;
    s.dim = 1;
    std::istringstream in(value);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        std::size_t pos = 0;
        long v;
        try {
            v = std::stol(tok, &pos);
        } catch (const std::exception&) {
            throw wg::parse_error("'" + value + "' is neither a readable file nor an inline step list",
                                  0);
        }
        if (pos != tok.size())
            throw wg::parse_error("bad step '" + tok + "' in inline list", pos);
        s.steps.push_back({static_cast<int>(v), 0, 0});
    }
    s.validate();
    return s;
}

void emit_document(const wg::report::ReportDocument& doc, const std::string& out_path) {
    std::cout << doc.human_text();
    if (!out_path.empty()) {
        wg::report::atomic_write(out_path, doc.serialize());
        std::cout << "report written to " << out_path << "\n";
    }
}

wg::report::ReportDocument make_document(const wg::report::RunManifest& manifest,
                                         std::uint64_t elapsed_ms) {
    wg::report::ReportDocument doc;
    doc.header["generated_at"] = iso_timestamp();
    doc.header["elapsed_ms"] = elapsed_ms;
    doc.body["manifest"] = manifest.to_json();
    return doc;
}

int status_to_exit(wg::ansatz::GuessStatus s) {
    switch (s) {
        case wg::ansatz::GuessStatus::VerifiedConjecture: return exit_ok;
        case wg::ansatz::GuessStatus::NoFitWithinBounds: return exit_no_fit;
        case wg::ansatz::GuessStatus::ResourceExceeded: return exit_resource;
        case wg::ansatz::GuessStatus::InsufficientTerms: return exit_input;
        case wg::ansatz::GuessStatus::DegenerateInput: return exit_input;
    }
    return exit_unexpected;
}

// -----------------------------------------------------------------------
// enum

int cmd_enum(const std::string& steps_arg, const std::string& mode_arg, long N,
             const std::string& out_path) {
    wg::model::StepSet steps = load_stepset(steps_arg);
    wg::model::CountMode mode = wg::model::mode_from_string(mode_arg);
    mode.validate(steps.dim);
    wg::model::CountTable table = wg::model::enumerate_dp(steps, mode, N);
    wg::report::RunManifest manifest;
    manifest.command = "enum";
    manifest.stepset = wg::model::stepset_to_string(steps);
    manifest.mode = wg::model::mode_to_string(mode);
    manifest.terms_source = "dp";
    manifest.terms = N + 1;
    std::string text = wg::report::terms_file_text(manifest, table.values);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        wg::report::atomic_write(out_path, text);
        std::cout << "wrote " << table.values.size() << " terms to " << out_path << "\n";
    }
    return exit_ok;
}

// -----------------------------------------------------------------------
// guess

struct GuessArgs {
    std::string steps;
    std::string mode = "zero";
    std::string terms_file;
    long terms = 400;
    std::string ansatz = "auto";
    long max_order = 12;
    long max_degree = 12;
    double split = 0.6;
    long min_verify = 10;
    std::uint64_t budget_seconds = 0;
    std::string out;
};

int cmd_guess(const GuessArgs& a) {
    wg::ansatz::PipelineBudget budget;
    budget.terms = a.terms;
    budget.max_order = a.max_order;
    budget.max_degree = a.max_degree;
    budget.ansatz = a.ansatz;
    budget.options.fit_fraction = a.split;
    budget.options.min_verify = a.min_verify;
    budget.options.time_cap_ms = a.budget_seconds * 1000;

    wg::report::RunManifest manifest;
    manifest.command = "guess";
    manifest.ansatz = a.ansatz;
    manifest.max_order = a.max_order;
    manifest.max_degree = a.max_degree;
    manifest.split = a.split;
    manifest.min_verify = a.min_verify;
    manifest.budget_seconds = a.budget_seconds;

    wg::ansatz::PipelineReport rep;
    bool from_dp = a.terms_file.empty();
    if (from_dp) {
        if (a.steps.empty())
            throw wg::parse_error("guess needs either --steps or --terms-file", 0);
        wg::model::StepSet steps = load_stepset(a.steps);
        wg::model::CountMode mode = wg::model::mode_from_string(a.mode);
        mode.validate(steps.dim);
        manifest.stepset = wg::model::stepset_to_string(steps);
        manifest.mode = wg::model::mode_to_string(mode);
        manifest.terms_source = "dp";
        manifest.terms = a.terms;
        rep = wg::ansatz::guess_pipeline(steps, mode, budget);
    } else {
        std::vector<Rat> terms =
            wg::report::parse_terms_text(wg::report::read_file(a.terms_file));
        if (terms.empty()) throw wg::parse_error("terms file has no terms", 0);
        manifest.terms_source = "file";
        manifest.terms = static_cast<long>(terms.size());
        rep = wg::ansatz::guess_terms(terms, budget);
    }

    wg::report::ReportDocument doc = make_document(manifest, rep.elapsed_ms);
    doc.body["pipeline"] = wg::report::pipeline_report_to_json(rep, from_dp);
    emit_document(doc, a.out);
    return status_to_exit(rep.overall);
}

// -----------------------------------------------------------------------
// check

wg::ansatz::RelationVariant sniff_relation(const std::string& text) {
    // formula lines start with "a(n) ="; recurrences mention shifted terms;
    // ODEs mention derivatives; everything else is algebraic
    std::size_t start = text.find_first_not_of(" \t");
    std::string body = start == std::string::npos ? text : text.substr(start);
    if (body.rfind("a(n) =", 0) == 0) return wg::ansatz::formula_from_string(text);
    if (text.find("D^") != std::string::npos) return wg::ansatz::differential_from_string(text);
    if (text.find("a(") != std::string::npos) return wg::ansatz::recurrence_from_string(text);
    return wg::ansatz::algebraic_from_string(text);
}

int cmd_check(const std::string& relation_file, const std::string& terms_file, long from_index,
              const std::string& out_path) {
    std::string relation_text;
    {
        std::istringstream in(wg::report::read_file(relation_file));
        std::string line;
        while (std::getline(in, line)) {
            std::size_t s = line.find_first_not_of(" \t\r");
            if (s == std::string::npos || line[s] == '#') continue;
            std::size_t e = line.find_last_not_of(" \t\r");
            relation_text = line.substr(s, e - s + 1);
            break;
        }
    }
    if (relation_text.empty()) throw wg::parse_error("relation file has no relation line", 0);
    wg::ansatz::RelationVariant rel = sniff_relation(relation_text);
    std::vector<Rat> terms = wg::report::parse_terms_text(wg::report::read_file(terms_file));
    if (terms.empty()) throw wg::parse_error("terms file has no terms", 0);
    wg::ansatz::VerifyResult res = wg::ansatz::verify_relation(rel, terms, from_index);

    std::string status;
    int code;
    if (res.first_failure >= 0) {
        status = "failed";
        code = exit_failed;
    } else if (!res.skipped.empty()) {
        status = "partial";
        code = exit_partial;
    } else {
        status = "full";
        code = exit_ok;
    }

    wg::report::RunManifest manifest;
    manifest.command = "check";
    manifest.terms_source = "file";
    manifest.terms = static_cast<long>(terms.size());
    wg::report::ReportDocument doc = make_document(manifest, 0);
    wg::report::json c;
    c["relation"] = wg::ansatz::relation_text(rel);
    c["status"] = status;
    c["depth"] = res.depth;
    c["first_failure"] = res.first_failure;
    c["skipped"] = res.skipped;
    doc.body["check"] = c;

    std::cout << "relation: " << c["relation"].get<std::string>() << "\n";
    std::cout << "checked " << res.depth << " positions: " << status << "\n";
    if (res.first_failure >= 0)
        std::cout << "first failing index: " << res.first_failure << "\n";
    if (!res.skipped.empty()) {
        std::cout << "skipped (leading coefficient vanishes):";
        for (long n : res.skipped) std::cout << " " << n;
        std::cout << "\n";
    }
    if (!out_path.empty()) {
        wg::report::atomic_write(out_path, doc.serialize());
        std::cout << "report written to " << out_path << "\n";
    }
    return code;
}

// -----------------------------------------------------------------------
// replicate

struct StudyResult {
    bool ok = true;
    bool resource = false;
    std::vector<std::string> log;

    void expect(bool cond, const std::string& what) {
        log.push_back(std::string(cond ? "ok   " : "FAIL ") + what);
        if (!cond) ok = false;
    }
    void info(const std::string& what) { log.push_back("     " + what); }
};

StudyResult study_gauss() {
    StudyResult res;
    std::vector<Rat> terms;
    Rat acc(0);
    for (long n = 0; n <= 6; ++n) {
        if (n > 0) acc += n;
        terms.push_back(acc);
    }
    wg::ansatz::GuessOptions opt;
    opt.min_verify = 2; // the two confirmation points beyond the fit
    wg::ansatz::GuessReport rep = wg::ansatz::guess_polynomial(terms, opt);
    res.expect(rep.verified(), "polynomial fit verified");
    res.expect(rep.relation_text == "a(n) = (1/2)*n^2 + (1/2)*n",
               "formula is " + rep.relation_text);
    res.expect(rep.fit_terms == 5, "fitted on the first five terms");
    res.expect(rep.verification_depth == 2, "confirmed on a(5) and a(6)");
    return res;
}

StudyResult study_catalan() {
    StudyResult res;
    wg::model::StepSet steps{-1, 1};
    wg::model::CountTable table = wg::model::enumerate_dp(steps, wg::model::CountMode::zero(), 26);
    wg::ansatz::CompressResult comp = wg::ansatz::compress_zeros(table.values);
    res.expect(comp.period == 2 && comp.residue == 0, "support is the even indices");
    res.expect(static_cast<long>(comp.compressed.size()) == 14, "14 compressed terms");

    wg::ansatz::GuessOptions opt;
    opt.min_verify = 5;
    wg::ansatz::GuessReport alg = wg::ansatz::guess_algebraic(comp.compressed, 4, 4, opt);
    res.expect(alg.verified(), "algebraic fit verified");
    res.expect(alg.relation_text == "(1)*C^2*t + (-1)*C + (1) = 0",
               "algebraic relation is " + alg.relation_text);

    std::vector<Rat> twelve(comp.compressed.begin(), comp.compressed.begin() + 12);
    opt.min_verify = 4;
    wg::ansatz::GuessReport rec = wg::ansatz::guess_recurrence(twelve, 4, 4, opt);
    res.expect(rec.verified(), "recurrence fit verified");
    res.expect(rec.relation_text == "(n+2)*a(n+1) + (-4*n-2)*a(n) = 0",
               "recurrence is " + rec.relation_text);

    if (rec.verified()) {
        const auto& r = std::get<wg::ansatz::Recurrence>(rec.relation);
        std::vector<Rat> unrolled = wg::seqkit::unroll(r, 200);
        std::vector<Int> conv = wg::seqkit::convolution_oracle(200);
        bool agree = true;
        for (long n = 0; n <= 200; ++n) {
            if (unrolled[n] != Rat(conv[n]) || conv[n] != wg::seqkit::closed_form_catalan(n)) {
                agree = false;
                break;
            }
        }
        res.expect(agree, "convolution, recurrence and closed form agree to n = 200");
    }
    return res;
}

StudyResult study_gambler() {
    StudyResult res;
    wg::model::StepSet steps{-1, 1};
    steps.weights = std::vector<Rat>{Rat(1, 2), Rat(1, 2)};
    wg::model::CountTable prob =
        wg::model::probability_table(steps, wg::model::CountMode::zero(), 100);
    bool odd_zero = true, law = true;
    for (long n = 1; n <= 100; n += 2)
        if (prob.values[n] != 0) odd_zero = false;
    for (long n = 0; n <= 50; ++n) {
        Int pow4;
        mpz_ui_pow_ui(pow4.get_mpz_t(), 4, static_cast<unsigned long>(n));
        Rat lhs = prob.values[2 * n] * Rat(pow4) * Rat(n + 1);
        if (lhs != Rat(wg::seqkit::binomial_coefficient(2 * n, n))) law = false;
    }
    res.expect(odd_zero, "break-even is impossible after an odd number of rounds");
    res.expect(law, "survive-and-break-even probability is C(2n,n)/4^n * 1/(n+1), n = 0..50");
    return res;
}

StudyResult study_probability() {
    StudyResult res;
    wg::model::StepSet raw{-1, 1};
    raw.weights = std::vector<Rat>{Rat(1), Rat(2)}; // deliberately unnormalized
    wg::model::CountTable p =
        wg::model::probability_table(raw, wg::model::CountMode::zero(), 8);
    res.expect(p.weights_normalized, "weights (1, 2) were rescaled to (1/3, 2/3)");
    res.expect(p.values[2] == Rat(2, 9), "P(break even after 2 rounds) = 2/9");

    wg::model::StepSet uniform{-1, 1};
    uniform.weights = std::vector<Rat>{Rat(1, 2), Rat(1, 2)};
    wg::model::CountTable up =
        wg::model::probability_table(uniform, wg::model::CountMode::zero(), 12);
    wg::model::CountTable counts =
        wg::model::enumerate_dp(wg::model::StepSet{-1, 1}, wg::model::CountMode::zero(), 12);
    bool consistent = true;
    for (long n = 0; n <= 12; ++n) {
        Int pow2;
        mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>(n));
        if (up.values[n] != counts.values[n] / Rat(pow2)) consistent = false;
    }
    res.expect(consistent, "uniform probabilities equal counts divided by 2^n, n = 0..12");
    res.expect(up.values[6] == Rat(5, 64), "P(break even after 6 rounds) = 5/64");
    return res;
}

StudyResult study_s123(long terms, long max_order, long max_degree, std::uint64_t budget_seconds) {
    StudyResult res;
    wg::model::StepSet steps{-1, -2, 3};
    struct Run {
        const char* name;
        wg::model::CountMode mode;
        long expected_order;
    };
    const Run runs[] = {
        {"walks returning to the origin", wg::model::CountMode::zero(), 20},
        {"walks with free endpoint", wg::model::CountMode::any(), 21},
    };
    auto clock_start = std::chrono::steady_clock::now();
    for (const Run& run : runs) {
        wg::ansatz::PipelineBudget budget;
        budget.terms = terms;
        budget.max_order = max_order;
        budget.max_degree = max_degree;
        budget.ansatz = "rec";
        budget.options.min_verify = 100;
        if (budget_seconds) {
            auto spent = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - clock_start)
                             .count();
            std::uint64_t total_ms = budget_seconds * 1000;
            if (static_cast<std::uint64_t>(spent) >= total_ms) {
                res.resource = true;
                res.expect(false, std::string(run.name) + ": time budget exhausted before the run");
                continue;
            }
            budget.options.time_cap_ms = total_ms - static_cast<std::uint64_t>(spent);
        }
        wg::ansatz::PipelineReport rep = wg::ansatz::guess_pipeline(steps, run.mode, budget);
        const wg::ansatz::GuessReport& r = rep.results.at(0).second;
        if (r.status == wg::ansatz::GuessStatus::ResourceExceeded) {
            res.resource = true;
            res.expect(false, std::string(run.name) + ": resource budget exceeded (" + r.note + ")");
            continue;
        }
        res.expect(r.verified(), std::string(run.name) + ": recurrence verified");
        if (r.verified()) {
            res.expect(r.found_order <= run.expected_order,
                       std::string(run.name) + ": order " + std::to_string(r.found_order) +
                           " <= " + std::to_string(run.expected_order));
            res.expect(r.verification_depth >= 100,
                       std::string(run.name) + ": " + std::to_string(r.verification_depth) +
                           " held-out terms verified");
            res.info(std::string(run.name) + ": degree " + std::to_string(r.found_degree) +
                     ", route " + wg::ansatz::to_string(r.route) + ", " +
                     std::to_string(r.primes_used) + " primes");
        }
    }
    return res;
}

int cmd_replicate(const std::string& id, long terms, long max_order, long max_degree,
                  std::uint64_t budget_seconds, const std::string& out_path) {
    StudyResult res;
    if (id == "gauss") {
        res = study_gauss();
    } else if (id == "catalan-theorem") {
        res = study_catalan();
    } else if (id == "gambler-101") {
        res = study_gambler();
    } else if (id == "probability") {
        res = study_probability();
    } else if (id == "s-123") {
        res = study_s123(terms > 0 ? terms : 700, max_order > 0 ? max_order : 21,
                         max_degree > 0 ? max_degree : 40,
                         budget_seconds > 0 ? budget_seconds : 1800);
    } else {
        throw wg::parse_error("unknown replicate id '" + id +
                                  "' (known: gauss, catalan-theorem, gambler-101, probability, "
                                  "s-123)",
                              0);
    }

    wg::report::RunManifest manifest;
    manifest.command = "replicate";
    manifest.ansatz = id;
    wg::report::ReportDocument doc = make_document(manifest, 0);
    wg::report::json lines = wg::report::json::array();
    for (const std::string& l : res.log) lines.push_back(l);
    doc.body["replicate"] = {{"id", id}, {"checks", lines}};
    std::string verdict = res.resource ? "resource-exceeded" : (res.ok ? "pass" : "FAIL");
    doc.body["summary"] = "replicate " + id + ": " + verdict;

    for (const std::string& l : res.log) std::cout << l << "\n";
    std::cout << "replicate " << id << ": " << verdict << "\n";
    if (!out_path.empty()) {
        wg::report::atomic_write(out_path, doc.serialize());
        std::cout << "report written to " << out_path << "\n";
    }
    if (res.resource) return exit_resource;
    return res.ok ? exit_ok : exit_failed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact lattice-walk enumeration with automatic relation guessing"};
    app.set_version_flag("--version", wg::report::tool_version);
    app.require_subcommand(1);

    // enum
    auto* enum_cmd = app.add_subcommand("enum", "write exact counts for a step set");
    std::string en_steps, en_mode = "zero", en_out;
    long en_terms = 12;
    enum_cmd->add_option("--steps", en_steps, "step-set file or inline 1D list like -1,1")
        ->required();
    enum_cmd->add_option("--mode", en_mode, "zero | any | slice i[,j[,k]]");
    enum_cmd->add_option("--terms", en_terms, "highest index N; writes a(0..N)");
    enum_cmd->add_option("--out", en_out, "output path (default stdout)");

    // guess
    auto* guess_cmd = app.add_subcommand("guess", "fit relations to counting data");
    GuessArgs ga;
    guess_cmd->add_option("--steps", ga.steps, "step-set file or inline 1D list");
    guess_cmd->add_option("--mode", ga.mode, "zero | any | slice i[,j[,k]]");
    guess_cmd->add_option("--terms", ga.terms, "data points to enumerate (with --steps)");
    guess_cmd->add_option("--terms-file", ga.terms_file, "read terms from a file instead");
    guess_cmd->add_option("--ansatz", ga.ansatz, "poly | alg | rec | ode | auto");
    guess_cmd->add_option("--max-order", ga.max_order, "order cap (degree-in-C cap for alg)");
    guess_cmd->add_option("--max-degree", ga.max_degree, "coefficient degree cap");
    guess_cmd->add_option("--split", ga.split, "fit fraction (rest is held out)");
    guess_cmd->add_option("--min-verify", ga.min_verify, "held-out terms required");
    guess_cmd->add_option("--budget-seconds", ga.budget_seconds, "wall-clock cap, 0 = none");
    guess_cmd->add_option("--out", ga.out, "write the JSON report here");

    // check
    auto* check_cmd = app.add_subcommand("check", "re-verify a stored relation");
    std::string ck_relation, ck_terms, ck_out;
    long ck_from = 0;
    check_cmd->add_option("--relation-file", ck_relation, "file whose first line is the relation")
        ->required();
    check_cmd->add_option("--terms-file", ck_terms, "terms to verify against")->required();
    check_cmd->add_option("--from", ck_from, "first index to check");
    check_cmd->add_option("--out", ck_out, "write the JSON report here");

    // replicate
    auto* rep_cmd = app.add_subcommand("replicate", "rerun a built-in case study");
    std::string rp_id, rp_out;
    long rp_terms = 0, rp_order = 0, rp_degree = 0;
    std::uint64_t rp_budget = 0;
    rep_cmd->add_option("id", rp_id, "gauss | catalan-theorem | gambler-101 | probability | s-123")
        ->required();
    rep_cmd->add_option("--terms", rp_terms, "override the study's term budget");
    rep_cmd->add_option("--max-order", rp_order, "override the order cap");
    rep_cmd->add_option("--max-degree", rp_degree, "override the degree cap");
    rep_cmd->add_option("--budget-seconds", rp_budget, "override the time budget");
    rep_cmd->add_option("--out", rp_out, "write the JSON report here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*enum_cmd) return cmd_enum(en_steps, en_mode, en_terms, en_out);
        if (*guess_cmd) return cmd_guess(ga);
        if (*check_cmd) return cmd_check(ck_relation, ck_terms, ck_from, ck_out);
        if (*rep_cmd)
            return cmd_replicate(rp_id, rp_terms, rp_order, rp_degree, rp_budget, rp_out);
    } catch (const wg::parse_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_input;
    } catch (const wg::resource_exceeded& e) {
        std::cerr << "resource budget exceeded: " << e.what() << "\n";
        return exit_resource;
    } catch (const wg::insufficient_terms& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_input;
    } catch (const wg::exceptional_index& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_input;
    } catch (const wg::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return exit_unexpected;
    }
    return exit_unexpected;
}
