#include "fpl/cli/render.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

namespace fpl::cli {

namespace {

std::string pair_str(const std::optional<std::pair<Int, Int>>& p)
{
    if (!p) return "";
    return "(" + to_string(p->first) + ", " + to_string(p->second) + ")";
}

std::string opt_str(const std::optional<Rational>& r) { return r ? r->str() : ""; }

Json cases_json(const verify::RangeSpec& r)
{
    Json cases = Json::array();
    for (ParityCase c : kAllParityCases) {
        if (r.includes(c)) cases.push_back(std::string(name_of(c)));
    }
    return cases;
}

Json document(const Header& h)
{
    Json j;
    j["command"] = h.command;
    j["params"] = h.params;
    return j;
}

void finish(Json& j, const Header& h, std::int64_t elapsed_ms)
{
    if (h.timing) j["elapsed_ms"] = elapsed_ms;
}

void emit_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

template <class Set>
std::string join(const Set& values)
{
    std::string out;
    for (const auto& v : values) {
        if (!out.empty()) out += ' ';
        out += v.str();
    }
    return out;
}

std::string tuple_str(const std::array<Int, 6>& t)
{
    std::string out = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out += ", ";
        out += to_string(t[i]);
    }
    return out + ")";
}

} // namespace

Json int_json(Int v)
{
    if (fits_double_exactly(v)) return static_cast<std::int64_t>(v);
    return to_string(v);
}

Json rational_json(const Rational& r) { return r.str(); }

Json pair_json(const std::optional<std::pair<Int, Int>>& p)
{
    if (!p) return nullptr;
    return Json::array({int_json(p->first), int_json(p->second)});
}

Json range_json(const verify::RangeSpec& r)
{
    Json j;
    j["x_min"] = r.x_min;
    j["x_max"] = r.x_max;
    j["y_min"] = r.y_min;
    j["y_max"] = r.y_max;
    j["cases"] = cases_json(r);
    return j;
}

Json lambda_json(const LambdaSpec& l)
{
    if (l.is_constant()) return l.at(1, 1).str();
    Json j;
    const auto t = l.table();
    for (ParityCase c : kAllParityCases) j[std::string(name_of(c))] = t[index_of(c)].str();
    return j;
}

std::string csv_field(std::string_view s)
{
    if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

// ---------------------------------------------------------------------------
// verification reports

Json to_json(const verify::VerificationReport& r, const Header& h)
{
    Json j = document(h);
    j["check"] = r.check;
    j["range"] = range_json(r.range);
    j["pairs_checked"] = r.pairs_checked;
    Json cells = Json::array();
    for (const auto& t : r.per_case) {
        Json c;
        c["label"] = t.label;
        c["statistic"] = t.statistic;
        c["count"] = t.count;
        c["observed"] = t.observed ? rational_json(*t.observed) : Json(nullptr);
        c["observed_at"] = pair_json(t.observed_at);
        c["bound"] = t.bound ? rational_json(*t.bound) : Json(nullptr);
        c["violations"] = t.violations;
        cells.push_back(std::move(c));
    }
    j["per_case"] = std::move(cells);
    Json vs = Json::array();
    for (const auto& v : r.violations) {
        Json e;
        e["x"] = int_json(v.x);
        e["y"] = int_json(v.y);
        e["case"] = std::string(name_of(v.kind));
        e["quantity"] = std::string(verify::name_of(v.quantity));
        e["value"] = rational_json(v.value);
        e["detail"] = v.detail;
        vs.push_back(std::move(e));
    }
    j["violations"] = std::move(vs);
    j["violations_total"] = r.violations_total;
    j["verified"] = r.verified();
    finish(j, h, r.elapsed_ms);
    return j;
}

void write(std::ostream& out, const verify::VerificationReport& r, const Header& h, Format f)
{
    if (f == Format::json) {
        emit_json(out, to_json(r, h));
        return;
    }
    if (f == Format::csv) {
        out << "record,label,statistic,count,observed,x,y,bound,violations,case,quantity,value,detail\n";
        for (const auto& t : r.per_case) {
            out << "tally," << csv_field(t.label) << ',' << csv_field(t.statistic) << ',' << t.count << ','
                << opt_str(t.observed) << ',' << (t.observed_at ? to_string(t.observed_at->first) : "") << ','
                << (t.observed_at ? to_string(t.observed_at->second) : "") << ',' << opt_str(t.bound) << ','
                << t.violations << ",,,,\n";
        }
        for (const auto& v : r.violations) {
            out << "violation,,,,," << to_string(v.x) << ',' << to_string(v.y) << ",,," << name_of(v.kind) << ','
                << verify::name_of(v.quantity) << ',' << v.value.str() << ',' << csv_field(v.detail) << '\n';
        }
        return;
    }
    out << h.command << ": " << r.check << " over x in [" << r.range.x_min << ", " << r.range.x_max << "], y in ["
        << r.range.y_min << ", " << r.range.y_max << "]\n";
    out << "items checked: " << r.pairs_checked << "\n\n";
    out << std::left << std::setw(34) << "cell" << std::right << std::setw(12) << "count" << std::setw(12)
        << "observed" << std::setw(16) << "at" << std::setw(8) << "bound" << std::setw(12) << "violations"
        << '\n';
    for (const auto& t : r.per_case) {
        out << std::left << std::setw(34) << t.label << std::right << std::setw(12) << t.count << std::setw(12)
            << opt_str(t.observed) << std::setw(16) << pair_str(t.observed_at) << std::setw(8) << opt_str(t.bound)
            << std::setw(12) << t.violations << '\n';
    }
    out << "\nviolations: " << r.violations_total;
    if (r.violations.size() < r.violations_total) out << " (showing " << r.violations.size() << ")";
    out << '\n';
    for (const auto& v : r.violations) {
        out << "  (" << to_string(v.x) << ", " << to_string(v.y) << ") " << name_of(v.kind) << ' '
            << verify::name_of(v.quantity) << " value=" << v.value.str();
        if (!v.detail.empty()) out << ' ' << v.detail;
        out << '\n';
    }
    if (h.timing) out << "elapsed: " << r.elapsed_ms << " ms\n";
    out << (r.verified() ? "verified\n" : "NOT verified\n");
}

// ---------------------------------------------------------------------------
// condition coverage

Json to_json(const verify::ConditionCoverageReport& r, const Header& h)
{
    Json j = document(h);
    j["range"] = range_json(r.range);
    j["pairs_checked"] = r.pairs_checked;
    Json cells = Json::array();
    std::uint64_t fails = 0;
    for (const auto& c : r.cells) {
        fails += c.fails;
        Json e;
        e["label"] = c.label;
        e["pairs"] = c.pairs;
        e["holds_first"] = c.first;
        e["holds_mirrored"] = c.mirrored;
        e["fails"] = c.fails;
        e["m_bound_failures"] = c.m_bound_failures;
        e["exemplar_first"] = pair_json(c.exemplar_first);
        e["exemplar_mirrored"] = pair_json(c.exemplar_mirrored);
        e["exemplar_fail"] = pair_json(c.exemplar_fail);
        Json ratios = Json::array();
        for (const auto& v : c.ratios) ratios.push_back(rational_json(v));
        e["ratios"] = std::move(ratios);
        e["ratios_equal_A"] = !c.ratios.empty() && c.ratios.size() == 1 && *c.ratios.begin() == r.params.A;
        Json sums = Json::array();
        for (const auto& v : c.b_sums) sums.push_back(rational_json(v));
        e["b_sums"] = std::move(sums);
        e["b_sums_meet_B"] = c.b_sums.empty() || !(*c.b_sums.begin() < r.params.B);
        Json masses = Json::array();
        for (const auto& [p, o] : c.masses) masses.push_back(Json::array({rational_json(p), rational_json(o)}));
        e["masses"] = std::move(masses);
        Json tuples = Json::array();
        for (const auto& t : c.weight_tuples) {
            Json row = Json::array();
            for (Int v : t) row.push_back(int_json(v));
            tuples.push_back(std::move(row));
        }
        e["weight_tuples"] = std::move(tuples);
        e["truncated"] = c.truncated;
        cells.push_back(std::move(e));
    }
    j["per_case"] = std::move(cells);
    j["holds"] = r.holds();
    j["fails"] = fails;
    finish(j, h, r.elapsed_ms);
    return j;
}

void write(std::ostream& out, const verify::ConditionCoverageReport& r, const Header& h, Format f)
{
    if (f == Format::json) {
        emit_json(out, to_json(r, h));
        return;
    }
    if (f == Format::csv) {
        out << "label,pairs,holds_first,holds_mirrored,fails,m_bound_failures,exemplar_first,exemplar_mirrored,"
               "exemplar_fail,ratios,b_sums\n";
        for (const auto& c : r.cells) {
            out << csv_field(c.label) << ',' << c.pairs << ',' << c.first << ',' << c.mirrored << ',' << c.fails
                << ',' << c.m_bound_failures << ',' << csv_field(pair_str(c.exemplar_first)) << ','
                << csv_field(pair_str(c.exemplar_mirrored)) << ',' << csv_field(pair_str(c.exemplar_fail)) << ','
                << join(c.ratios) << ',' << join(c.b_sums) << '\n';
        }
        return;
    }
    out << h.command << ": " << r.condition.str() << ", lambda=" << r.params.lambda.str() << ", A=" << r.params.A.str()
        << ", B=" << r.params.B.str() << ", M=" << r.params.M.str();
    if (r.flags.corrected_c4) out << ", corrected (4)";
    out << "\npairs checked: " << r.pairs_checked << ", holding: " << r.holds() << "\n\n";
    out << std::left << std::setw(14) << "cell" << std::right << std::setw(10) << "pairs" << std::setw(10) << "first"
        << std::setw(10) << "mirrored" << std::setw(10) << "fails" << std::setw(8) << "M-fail" << "  "
        << std::left << std::setw(14) << "first fail" << "ratios / B-sums\n";
    for (const auto& c : r.cells) {
        out << std::left << std::setw(14) << c.label << std::right << std::setw(10) << c.pairs << std::setw(10)
            << c.first << std::setw(10) << c.mirrored << std::setw(10) << c.fails << std::setw(8)
            << c.m_bound_failures << "  " << std::left << std::setw(14) << pair_str(c.exemplar_fail);
        if (!c.ratios.empty()) out << join(c.ratios) << " / " << join(c.b_sums);
        out << '\n';
        for (const auto& t : c.weight_tuples) out << "    weights " << tuple_str(t) << '\n';
    }
    if (h.timing) out << "elapsed: " << r.elapsed_ms << " ms\n";
}

// ---------------------------------------------------------------------------
// lambda search

Json to_json(const verify::LambdaSearchResult& r, const Header& h)
{
    Json j = document(h);
    j["range"] = range_json(r.range);
    j["pairs_checked"] = r.pairs;
    Json grid;
    grid["q"] = r.q;
    Json as = Json::array();
    for (const auto& a : r.a_grid) as.push_back(rational_json(a));
    grid["A"] = std::move(as);
    j["grid"] = std::move(grid);
    Json best;
    best["lambda"] = lambda_json(LambdaSpec::per_case(r.best_lambda));
    best["A"] = rational_json(r.best_A);
    j["best"] = std::move(best);
    j["covered"] = r.covered;
    j["coverage"] = rational_json(r.coverage());
    Json failing = Json::array();
    for (ParityCase c : r.failing_cells) failing.push_back(std::string(name_of(c)));
    j["failing_cells"] = std::move(failing);
    j["budget_exhausted"] = r.budget_exhausted;
    j["evaluations"] = r.evaluations;
    return j;
}

void write(std::ostream& out, const verify::LambdaSearchResult& r, const Header& h, Format f)
{
    if (f == Format::json) {
        emit_json(out, to_json(r, h));
        return;
    }
    if (f == Format::csv) {
        out << "case,lambda,A,covered,pairs,coverage,failing\n";
        for (ParityCase c : kAllParityCases) {
            bool failing = false;
            for (ParityCase fc : r.failing_cells) failing = failing || fc == c;
            out << name_of(c) << ',' << r.best_lambda[index_of(c)].str() << ',' << r.best_A.str() << ','
                << r.covered << ',' << r.pairs << ',' << r.coverage().str() << ',' << (failing ? 1 : 0) << '\n';
        }
        return;
    }
    out << h.command << ": q=" << r.q << ", " << r.condition.str() << ", A grid:";
    for (const auto& a : r.a_grid) out << ' ' << a.str();
    out << "\npairs: " << r.pairs << ", evaluations: " << r.evaluations << "\n\nbest A: " << r.best_A.str()
        << "\nbest lambda:\n";
    for (ParityCase c : kAllParityCases) {
        out << "  " << std::left << std::setw(10) << name_of(c) << r.best_lambda[index_of(c)].str() << '\n';
    }
    out << "covered: " << r.covered << " of " << r.pairs << " (" << r.coverage().str() << ")\n";
    out << "cases never fully covered:";
    if (r.failing_cells.empty()) out << " none";
    for (ParityCase c : r.failing_cells) out << ' ' << name_of(c);
    out << '\n';
    if (r.budget_exhausted) out << "note: evaluation budget exhausted, result is partial\n";
}

// ---------------------------------------------------------------------------
// trajectories

Json to_json(const collatz::TrajectoryRecord& t, const Header& h)
{
    Json j = document(h);
    j["seed"] = int_json(t.seed);
    j["map"] = std::string(collatz::name_of(t.map));
    j["reached_one"] = t.reached_one();
    j["steps"] = t.steps ? Json(*t.steps) : Json(nullptr);
    j["peak"] = int_json(t.peak);
    if (t.path) {
        Json path = Json::array();
        for (Int v : *t.path) path.push_back(int_json(v));
        j["path"] = std::move(path);
    }
    return j;
}

void write(std::ostream& out, const collatz::TrajectoryRecord& t, const Header& h, Format f)
{
    if (f == Format::json) {
        emit_json(out, to_json(t, h));
        return;
    }
    if (f == Format::csv) {
        out << "n,value\n";
        if (t.path) {
            for (std::size_t i = 0; i < t.path->size(); ++i) out << i << ',' << to_string((*t.path)[i]) << '\n';
        }
        return;
    }
    out << h.command << ": seed " << to_string(t.seed) << " under " << collatz::name_of(t.map) << '\n';
    if (t.steps) {
        out << "stopping time: " << *t.steps << '\n';
    } else {
        out << "stopping time: not reached within the cap\n";
    }
    out << "peak: " << to_string(t.peak) << '\n';
    if (t.path) {
        out << "path:";
        for (Int v : *t.path) out << ' ' << to_string(v);
        out << '\n';
    }
}

} // namespace fpl::cli
