#include "fpl/cli/cli.hpp"

#include "fpl/cli/render.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <thread>

namespace fpl::cli {

Environment Environment::from_process()
{
    Environment env;
    if (const char* v = std::getenv("FPL_OUTPUT"); v && *v) env.output = v;
    if (const char* v = std::getenv("FPL_JOBS"); v && *v) env.jobs = v;
    return env;
}

namespace {

constexpr std::int64_t kPairSweepLimit = 10'000;
constexpr std::int64_t kTripleSweepLimit = 500;
constexpr std::int64_t kSeedSweepLimit = 1'000'000;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Config {
    std::int64_t min = 1;
    std::optional<std::int64_t> max;
    std::optional<std::int64_t> y_min;
    std::optional<std::int64_t> y_max;
    std::vector<std::string> cases;
    std::string format = "text";
    std::string output;
    std::optional<unsigned> jobs;
    std::size_t max_violations = 100;
    bool timing = false;
    bool allow_large = false;
    bool progress = false;

    std::string mode = "direct";
    std::vector<std::string> lambdas;
    std::vector<std::string> thetas;
    std::string A;
    std::vector<std::string> a_grid;
    std::string B = "2";
    std::string M = "2";
    int theorem = 3;
    int condition = 5;
    bool corrected_c4 = false;
    bool m_bound_on_symmetrized = false;

    std::string seed;
    std::string map = "T";
    std::uint64_t cap = collatz::kDefaultCap;

    unsigned q = 1;
    std::uint64_t budget = 200'000'000;
};

Rational rational_arg(const std::string& text, const char* flag)
{
    auto r = parse_rational(text);
    if (!r) throw UsageError(std::string(flag) + ": not a rational number: '" + text + "'");
    return *r;
}

LambdaSpec lambda_arg(const std::string& text)
{
    auto l = parse_lambda_spec(text);
    if (!l) throw UsageError("--lambda: malformed or outside [0, 1]: '" + text + "'");
    return *l;
}

Format format_arg(const std::string& text)
{
    if (text == "text") return Format::text;
    if (text == "json") return Format::json;
    if (text == "csv") return Format::csv;
    throw UsageError("--format must be text, json or csv");
}

std::vector<std::string> split_commas(const std::vector<std::string>& items)
{
    std::vector<std::string> out;
    for (const auto& item : items) {
        std::size_t start = 0;
        while (true) {
            auto pos = item.find(',', start);
            out.push_back(item.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
    }
    return out;
}

verify::RangeSpec range_arg(const Config& c, std::int64_t default_max, std::int64_t limit)
{
    verify::RangeSpec r;
    r.x_min = c.min;
    r.x_max = c.max.value_or(default_max);
    r.y_min = c.y_min.value_or(r.x_min);
    r.y_max = c.y_max.value_or(r.x_max);
    std::vector<ParityCase> cases;
    for (const auto& name : c.cases) {
        auto pc = parse_parity_case(name);
        if (!pc) throw UsageError("--case: unknown parity case '" + name + "'");
        cases.push_back(*pc);
    }
    r.case_mask = verify::case_mask_of(cases);
    r.validate();
    if (!c.allow_large && std::max(r.x_max, r.y_max) > limit) {
        throw UsageError("ranges beyond " + std::to_string(limit) + " need --allow-large");
    }
    return r;
}

ConditionId condition_arg(const Config& c)
{
    ConditionId id{c.theorem, c.condition};
    if (!id.valid()) throw UsageError("--theorem must be 1-3 and --condition 1-5");
    return id;
}

ConditionFlags flags_arg(const Config& c) { return {c.corrected_c4, c.m_bound_on_symmetrized}; }

Json condition_params_json(const ConditionParams& p, ConditionId id, ConditionFlags flags)
{
    Json j;
    j["lambda"] = lambda_json(p.lambda);
    j["A"] = rational_json(p.A);
    j["B"] = rational_json(p.B);
    j["M"] = rational_json(p.M);
    j["theorem"] = id.theorem;
    j["condition"] = id.number;
    j["corrected_c4"] = flags.corrected_c4;
    j["m_bound_on_symmetrized"] = flags.m_bound_on_symmetrized;
    return j;
}

class Runner {
public:
    Runner(const Config& c, std::ostream& out, std::ostream& err, const Environment& env)
        : c_(c), out_(out), err_(err), env_(env)
    {
    }

    int verify_cmd()
    {
        const auto range = range_arg(c_, kPairSweepLimit, kPairSweepLimit);
        auto opts = sweep_options();
        Header h = header("verify");
        h.params["mode"] = c_.mode;
        h.params["max_violations"] = c_.max_violations;
        verify::VerificationReport r;
        if (c_.mode == "direct" || c_.mode == "simplified") {
            verify::PseudocontractionChecks checks;
            checks.route = c_.mode == "direct" ? verify::LhsRoute::direct : verify::LhsRoute::simplified;
            checks.sharpened_bound = false;
            r = verify::verify_pseudocontraction(range, opts, checks);
        } else if (c_.mode == "bounds") {
            r = verify::verify_pseudocontraction(range, opts, {});
        } else if (c_.mode == "cross") {
            r = verify::cross_check_simplified(range, opts);
        } else if (c_.mode == "weights") {
            const Rational m = rational_arg(c_.M, "--M");
            h.params["M"] = rational_json(m);
            r = verify::verify_weight_bound(range, m, opts);
        } else {
            throw UsageError("--mode must be direct, simplified, cross, bounds or weights");
        }
        emit(r, h);
        return r.verified() ? kOk : kFindings;
    }

    int lemmas_cmd()
    {
        const auto range = range_arg(c_, 200, kTripleSweepLimit);
        std::vector<Rational> thetas;
        const auto theta_text = c_.thetas.empty() ? std::vector<std::string>{"-3", "-5/2", "-2", "-1", "0", "1/2",
                                                                              "1", "2", "3"}
                                                  : split_commas(c_.thetas);
        for (const auto& t : theta_text) {
            if (t != "none") thetas.push_back(rational_arg(t, "--theta"));
        }
        std::vector<LambdaSpec> lambdas;
        const auto lambda_text =
            c_.lambdas.empty() ? std::vector<std::string>{"0", "1/4", "1/2", "3/4", "1"} : c_.lambdas;
        for (const auto& l : lambda_text) {
            if (l != "none") lambdas.push_back(lambda_arg(l));
        }
        Header h = header("lemmas");
        Json ts = Json::array();
        for (const auto& t : thetas) ts.push_back(rational_json(t));
        Json ls = Json::array();
        for (const auto& l : lambdas) ls.push_back(lambda_json(l));
        h.params["thetas"] = std::move(ts);
        h.params["lambdas"] = std::move(ls);
        h.params["max_violations"] = c_.max_violations;
        auto r = verify::verify_lemmas(range, thetas, lambdas, sweep_options());
        emit(r, h);
        return r.verified() ? kOk : kFindings;
    }

    int decay_cmd()
    {
        verify::RangeSpec seeds{c_.min, c_.max.value_or(1000), 1, 1, verify::kAllCases};
        seeds.validate();
        if (!c_.allow_large && seeds.x_max > kSeedSweepLimit) {
            throw UsageError("seed ranges beyond " + std::to_string(kSeedSweepLimit) + " need --allow-large");
        }
        ConditionParams p;
        p.lambda = lambda_arg(c_.lambdas.empty() ? "0" : c_.lambdas.front());
        p.A = rational_arg(c_.A.empty() ? "1/2" : c_.A, "--A");
        p.B = rational_arg(c_.B, "--B");
        p.M = rational_arg(c_.M, "--M");
        p.validate();
        Header h = header("decay");
        h.params = condition_params_json(p, {1, 5}, flags_arg(c_));
        h.params["cap"] = c_.cap;
        h.params["max_violations"] = c_.max_violations;
        auto r = verify::orbit_decay_sweep(seeds.x_min, seeds.x_max, p, sweep_options(), c_.cap, flags_arg(c_));
        emit(r, h);
        return r.verified() ? kOk : kFindings;
    }

    int conditions_cmd()
    {
        const auto range = range_arg(c_, 1000, kPairSweepLimit);
        const ConditionParams p = condition_params();
        const ConditionId id = condition_arg(c_);
        Header h = header("conditions");
        h.params = condition_params_json(p, id, flags_arg(c_));
        auto r = verify::condition_coverage(range, p, id, flags_arg(c_), sweep_options());
        write_out([&](std::ostream& o) { write(o, r, h, format()); });
        return kOk;
    }

    int orbit_cmd()
    {
        if (c_.seed.empty()) throw UsageError("--seed is required");
        auto seed = parse_int(c_.seed);
        if (!seed || *seed < 1) throw UsageError("--seed must be a positive integer");
        if (c_.cap < 1) throw UsageError("--cap must be at least 1");
        collatz::MapKind map;
        if (c_.map == "C") {
            map = collatz::MapKind::C;
        } else if (c_.map == "T") {
            map = collatz::MapKind::T;
        } else {
            throw UsageError("--map must be C or T");
        }
        Header h = header("orbit");
        h.params["cap"] = c_.cap;
        const auto t = collatz::stopping_time(map, *seed, c_.cap, true);
        write_out([&](std::ostream& o) { write(o, t, h, format()); });
        return t.reached_one() ? kOk : kFindings;
    }

    int search_cmd()
    {
        const auto range = range_arg(c_, 200, kPairSweepLimit);
        verify::LambdaSearchOptions o;
        o.q = c_.q;
        for (const auto& a : split_commas(c_.a_grid)) o.a_grid.push_back(rational_arg(a, "--A"));
        if (o.a_grid.empty()) throw UsageError("--A is required (one or more values)");
        o.condition = condition_arg(c_);
        o.flags = flags_arg(c_);
        o.B = rational_arg(c_.B, "--B");
        o.M = rational_arg(c_.M, "--M");
        o.budget = c_.budget;
        Header h = header("search-lambda");
        h.params["q"] = o.q;
        h.params["B"] = rational_json(o.B);
        h.params["M"] = rational_json(o.M);
        h.params["theorem"] = o.condition.theorem;
        h.params["condition"] = o.condition.number;
        h.params["corrected_c4"] = o.flags.corrected_c4;
        h.params["m_bound_on_symmetrized"] = o.flags.m_bound_on_symmetrized;
        h.params["budget"] = o.budget;
        auto r = verify::search_lambda(range, o);
        write_out([&](std::ostream& os) { write(os, r, h, format()); });
        if (r.budget_exhausted) err_ << "note: evaluation budget exhausted, result is partial\n";
        return kOk;
    }

private:
    Format format() const { return format_arg(c_.format); }

    Header header(std::string command) const
    {
        Header h;
        h.command = std::move(command);
        h.timing = c_.timing;
        return h;
    }

    ConditionParams condition_params() const
    {
        if (c_.lambdas.empty()) throw UsageError("--lambda is required");
        if (c_.A.empty()) throw UsageError("--A is required");
        ConditionParams p;
        p.lambda = lambda_arg(c_.lambdas.front());
        p.A = rational_arg(c_.A, "--A");
        p.B = rational_arg(c_.B, "--B");
        p.M = rational_arg(c_.M, "--M");
        p.validate();
        return p;
    }

    unsigned jobs() const
    {
        unsigned n = 1;
        if (c_.jobs) {
            n = *c_.jobs;
        } else if (env_.jobs) {
            auto v = parse_int(*env_.jobs);
            if (!v || *v < 0 || *v > 4096) throw UsageError("FPL_JOBS must be a small non-negative integer");
            n = static_cast<unsigned>(*v);
        }
        if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
        return n;
    }

    verify::SweepOptions sweep_options()
    {
        verify::SweepOptions o;
        o.jobs = jobs();
        o.violation_limit = c_.max_violations;
        if (c_.progress) {
            o.progress = [this](std::uint64_t done) { err_ << "progress: " << done << " items\n"; };
        }
        return o;
    }

    template <class Report>
    void emit(const Report& r, const Header& h)
    {
        write_out([&](std::ostream& o) { write(o, r, h, format()); });
    }

    template <class Fn>
    void write_out(Fn&& fn)
    {
        const std::string path = !c_.output.empty() ? c_.output : env_.output.value_or("");
        if (path.empty() || path == "-") {
            fn(out_);
            return;
        }
        std::ofstream file(path, std::ios::binary);
        if (!file) throw UsageError("cannot open output file '" + path + "'");
        fn(file);
    }

    const Config& c_;
    std::ostream& out_;
    std::ostream& err_;
    const Environment& env_;
};

void add_common(CLI::App* app, Config& c)
{
    app->add_option("--format", c.format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
    app->add_option("--output", c.output, "Write the report here instead of stdout");
    app->add_flag("--timing", c.timing, "Include elapsed wall-clock time in the report");
    app->add_option("--jobs", c.jobs, "Worker threads; 0 means one per core");
}

void add_range(CLI::App* app, Config& c)
{
    app->add_option("--min", c.min, "Smallest coordinate (default 1)");
    app->add_option("--max", c.max, "Largest coordinate");
    app->add_option("--y-min", c.y_min, "Smallest y when it differs from --min");
    app->add_option("--y-max", c.y_max, "Largest y when it differs from --max");
    app->add_option("--case", c.cases, "Restrict to a parity case (repeatable), e.g. even-odd");
    app->add_option("--max-violations", c.max_violations, "Violations listed in the report (the total is exact)");
    app->add_flag("--allow-large", c.allow_large, "Permit ranges past the desk-scale limit");
    app->add_flag("--progress", c.progress, "Print progress to stderr");
}

void add_condition(CLI::App* app, Config& c)
{
    app->add_option("--B", c.B, "Lower bound on the B-sum (with --theorem 3)");
    app->add_option("--M", c.M, "Uniform weight bound (with --theorem 3)");
    app->add_option("--theorem", c.theorem, "1, 2 or 3");
    app->add_option("--condition", c.condition, "1 to 5");
    app->add_flag("--corrected-c4", c.corrected_c4, "Use delta + zeta + 2 min{gamma, 0} > 0 in condition (4)");
    app->add_flag("--m-bound-blended", c.m_bound_on_symmetrized, "Also bound the blended weights by M");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment& env)
{
    Config c;
    CLI::App app{"Exact verification of weighted pseudocontraction inequalities for the Collatz map", "fpl"};
    app.require_subcommand(1);

    auto* verify_app = app.add_subcommand("verify", "Sweep the defining inequality over a range of pairs");
    add_common(verify_app, c);
    add_range(verify_app, c);
    verify_app->add_option("--mode", c.mode, "direct, simplified, cross, bounds or weights")
        ->check(CLI::IsMember({"direct", "simplified", "cross", "bounds", "weights"}));
    verify_app->add_option("--M", c.M, "Weight bound for --mode weights");

    auto* lemmas_app = app.add_subcommand("lemmas", "Check the triangle weight bound and the lambda blend identity");
    add_common(lemmas_app, c);
    add_range(lemmas_app, c);
    lemmas_app->add_option("--theta", c.thetas, "Theta values (repeatable or comma-separated; 'none' skips)");
    lemmas_app->add_option("--lambda", c.lambdas, "Lambda specs (repeatable; 'none' skips)");

    auto* conditions_app = app.add_subcommand("conditions", "Map where a condition holds over a range");
    add_common(conditions_app, c);
    add_range(conditions_app, c);
    add_condition(conditions_app, c);
    conditions_app->add_option("--lambda", c.lambdas, "Lambda spec: constant, nine values or case=value pairs")
        ->expected(1);
    conditions_app->add_option("--A", c.A, "Contraction constant in (0, 1)");

    auto* decay_app = app.add_subcommand("decay", "Check geometric decay of step distances along orbits");
    add_common(decay_app, c);
    add_range(decay_app, c);
    decay_app->add_option("--lambda", c.lambdas, "Lambda spec (default 0)")->expected(1);
    decay_app->add_option("--A", c.A, "Contraction constant (default 1/2)");
    decay_app->add_option("--cap", c.cap, "Step cap per orbit");

    auto* orbit_app = app.add_subcommand("orbit", "Print a trajectory and its stopping time");
    add_common(orbit_app, c);
    orbit_app->add_option("--seed", c.seed, "Starting value")->required();
    orbit_app->add_option("--map", c.map, "C or T")->check(CLI::IsMember({"C", "T"}));
    orbit_app->add_option("--cap", c.cap, "Step cap");

    auto* search_app = app.add_subcommand("search-lambda", "Search per-case lambda and A maximizing coverage");
    add_common(search_app, c);
    add_range(search_app, c);
    add_condition(search_app, c);
    search_app->add_option("--q", c.q, "Lambda grid denominator; 0 forces lambda = 0");
    search_app->add_option("--A", c.a_grid, "A values (repeatable or comma-separated)");
    search_app->add_option("--budget", c.budget, "Maximum pair evaluations");

    std::vector<const char*> argv{"fpl"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        Runner runner(c, out, err, env);
        if (verify_app->parsed()) return runner.verify_cmd();
        if (lemmas_app->parsed()) return runner.lemmas_cmd();
        if (conditions_app->parsed()) return runner.conditions_cmd();
        if (decay_app->parsed()) return runner.decay_cmd();
        if (orbit_app->parsed()) return runner.orbit_cmd();
        return runner.search_cmd();
    } catch (const OverflowError& e) {
        err << "fpl: arithmetic overflow: " << e.what() << '\n';
        return kOverflow;
    } catch (const UsageError& e) {
        err << "fpl: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "fpl: " << e.what() << '\n';
        return kUsage;
    }
}

} // namespace fpl::cli
