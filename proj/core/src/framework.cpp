#include "fpl/framework.hpp"

#include <stdexcept>
#include <string>

namespace fpl {

void require_point(Int v, const char* what)
{
    if (v < 1) throw std::invalid_argument(std::string(what) + " must be a positive integer, got " + to_string(v));
}

ExactWeightVector to_exact(const WeightVector& w)
{
    return {w.alpha, w.beta, w.gamma, w.delta, w.epsilon, w.zeta};
}

Int weighted_sum(const WeightVector& w, const SquaredDistances& d)
{
    using checked::add;
    using checked::mul;
    Int s = mul(w.alpha, d.images);
    s = add(s, mul(w.beta, d.x_to_ty));
    s = add(s, mul(w.gamma, d.tx_to_y));
    s = add(s, mul(w.delta, d.points));
    s = add(s, mul(w.epsilon, d.x_step));
    s = add(s, mul(w.zeta, d.y_step));
    return s;
}

Rational weighted_sum(const ExactWeightVector& w, const SquaredDistances& d)
{
    return w.alpha * d.images + w.beta * d.x_to_ty + w.gamma * d.tx_to_y + w.delta * d.points +
           w.epsilon * d.x_step + w.zeta * d.y_step;
}

LambdaSpec LambdaSpec::constant(Rational value)
{
    if (value < 0 || value > 1) throw std::invalid_argument("lambda must lie in [0, 1], got " + value.str());
    LambdaSpec s;
    s.value_ = value;
    return s;
}

LambdaSpec LambdaSpec::per_case(const Table& table)
{
    for (const auto& v : table) {
        if (v < 0 || v > 1) throw std::invalid_argument("lambda must lie in [0, 1], got " + v.str());
    }
    LambdaSpec s;
    s.value_ = table;
    return s;
}

LambdaSpec::Table LambdaSpec::table() const
{
    if (const auto* c = std::get_if<Rational>(&value_)) {
        Table t;
        t.fill(*c);
        return t;
    }
    return std::get<Table>(value_);
}

std::string LambdaSpec::str() const
{
    if (const auto* c = std::get_if<Rational>(&value_)) return c->str();
    const auto& t = std::get<Table>(value_);
    std::string out;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out += ',';
        out += name_of(static_cast<ParityCase>(i));
        out += '=';
        out += t[i].str();
    }
    return out;
}

namespace {

std::vector<std::string_view> split(std::string_view text, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

bool in_unit_interval(const Rational& r) { return r >= 0 && r <= 1; }

} // namespace

std::optional<LambdaSpec> parse_lambda_spec(std::string_view text)
{
    if (text.empty()) return std::nullopt;
    if (text.find(',') == std::string_view::npos && text.find('=') == std::string_view::npos) {
        auto r = parse_rational(text);
        if (!r || !in_unit_interval(*r)) return std::nullopt;
        return LambdaSpec::constant(*r);
    }

    auto parts = split(text, ',');
    LambdaSpec::Table table;
    if (text.find('=') == std::string_view::npos) {
        if (parts.size() != kParityCaseCount) return std::nullopt;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            auto r = parse_rational(parts[i]);
            if (!r || !in_unit_interval(*r)) return std::nullopt;
            table[i] = *r;
        }
        return LambdaSpec::per_case(table);
    }

    std::array<bool, kParityCaseCount> seen{};
    std::optional<Rational> fallback;
    for (auto part : parts) {
        auto eq = part.find('=');
        if (eq == std::string_view::npos) return std::nullopt;
        auto key = part.substr(0, eq);
        auto r = parse_rational(part.substr(eq + 1));
        if (!r || !in_unit_interval(*r)) return std::nullopt;
        if (key == "*") {
            if (fallback) return std::nullopt;
            fallback = *r;
            continue;
        }
        auto c = parse_parity_case(key);
        if (!c || seen[index_of(*c)]) return std::nullopt;
        seen[index_of(*c)] = true;
        table[index_of(*c)] = *r;
    }
    for (std::size_t i = 0; i < kParityCaseCount; ++i) {
        if (seen[i]) continue;
        if (!fallback) return std::nullopt;
        table[i] = *fallback;
    }
    return LambdaSpec::per_case(table);
}

ExactWeightVector symmetrize(const WeightVector& at_xy, const WeightVector& at_yx, const Rational& lambda)
{
    if (lambda == 0) return to_exact(at_xy);
    const Rational keep = Rational(1) - lambda;
    auto blend = [&](Int own, Int swapped) { return keep * Rational(own) + lambda * Rational(swapped); };
    return {
        blend(at_xy.alpha, at_yx.alpha),   blend(at_xy.beta, at_yx.gamma),  blend(at_xy.gamma, at_yx.beta),
        blend(at_xy.delta, at_yx.delta),   blend(at_xy.epsilon, at_yx.zeta), blend(at_xy.zeta, at_yx.epsilon),
    };
}

Rational lemma1_gap(const Rational& theta, Int x, Int y, Int z)
{
    const Int dxy = checked::square(metric_d(x, y));
    const Int dxz = checked::square(metric_d(x, z));
    const Int dzy = checked::square(metric_d(z, y));
    const Rational negative_part = min(theta, Rational(0));
    return theta * dxy - negative_part * checked::mul(2, checked::add(dxz, dzy));
}

std::string ConditionId::str() const
{
    return "theorem " + std::to_string(theorem) + " condition (" + std::to_string(number) + ")";
}

void ConditionParams::validate() const
{
    if (!(A > 0 && A < 1)) throw std::invalid_argument("A must lie in (0, 1), got " + A.str());
    if (!(B > 0)) throw std::invalid_argument("B must be positive, got " + B.str());
    if (!(M > 0)) throw std::invalid_argument("M must be positive, got " + M.str());
    for (const auto& v : lambda.table()) {
        if (v < 0 || v > 1) throw std::invalid_argument("lambda must lie in [0, 1], got " + v.str());
    }
}

std::string_view name_of(Branch b)
{
    switch (b) {
    case Branch::first: return "first";
    case Branch::mirrored: return "mirrored";
    case Branch::none: break;
    }
    return "none";
}

namespace {

Rational twice_negative_part(const Rational& r) { return r.sign() < 0 ? r + r : Rational(0); }

// (positive mass, offset mass, B-sum) for a branch
struct BranchMasses {
    Rational positive;
    Rational offset;
    Rational b_sum;
};

BranchMasses masses(const ExactWeightVector& w, Branch branch)
{
    if (branch == Branch::mirrored) {
        Rational g = twice_negative_part(w.gamma);
        return {w.alpha + w.epsilon + g, w.delta + w.zeta + g, w.alpha + w.gamma + w.epsilon};
    }
    Rational b = twice_negative_part(w.beta);
    return {w.alpha + w.zeta + b, w.delta + w.epsilon + b, w.alpha + w.beta + w.zeta};
}

bool bounded_by(const WeightVector& w, const Rational& m)
{
    for (Int v : {w.alpha, w.beta, w.gamma, w.delta, w.epsilon, w.zeta}) {
        if (Rational(checked::abs(v)) > m) return false;
    }
    return true;
}

bool bounded_by(const ExactWeightVector& w, const Rational& m)
{
    for (const Rational* v : {&w.alpha, &w.beta, &w.gamma, &w.delta, &w.epsilon, &w.zeta}) {
        if (*v > m || -*v > m) return false;
    }
    return true;
}

BranchWitness branch_witness(const ExactWeightVector& w, Branch branch, const ConditionParams& params,
                             bool needs_b)
{
    auto m = masses(w, branch);
    BranchWitness out;
    out.positive_mass = m.positive;
    out.offset_mass = m.offset;
    out.b_sum = m.b_sum;
    if (m.positive.sign() > 0) out.ratio = -m.offset / m.positive;
    out.holds = out.ratio && *out.ratio <= params.A && (!needs_b || m.b_sum >= params.B);
    return out;
}

} // namespace

std::optional<Rational> contraction_ratio(const ExactWeightVector& blended, Branch branch)
{
    if (branch == Branch::none) return std::nullopt;
    auto m = masses(blended, branch);
    if (m.positive.sign() <= 0) return std::nullopt;
    return -m.offset / m.positive;
}

ConditionOutcome evaluate_condition(ConditionId id, const ConditionInputs& in, const ConditionParams& params,
                                    ConditionFlags flags)
{
    if (!id.valid()) throw std::invalid_argument("unknown condition: " + id.str());
    ConditionOutcome out;
    out.kind = id;
    out.flags = flags;

    const ExactWeightVector w = symmetrize(in.at_xy, in.at_yx, in.lambda_xy);

    if (id.number <= 4) {
        const auto by_beta = masses(w, Branch::first);
        const auto by_gamma = masses(w, Branch::mirrored);
        switch (id.number) {
        case 1:
            out.clause1 = by_beta.positive;
            out.clause2 = by_beta.offset;
            out.holds = out.clause1 > 0 && out.clause2 >= 0;
            break;
        case 2:
            out.clause1 = by_beta.positive;
            out.clause2 = by_beta.offset;
            out.holds = out.clause1 >= 0 && out.clause2 > 0;
            break;
        case 3:
            out.clause1 = by_gamma.positive;
            out.clause2 = by_gamma.offset;
            out.holds = out.clause1 > 0 && out.clause2 >= 0;
            break;
        default:
            out.clause1 = by_gamma.positive;
            out.clause2 = flags.corrected_c4 ? by_gamma.offset : by_beta.offset;
            out.holds = out.clause1 >= 0 && out.clause2 > 0;
            break;
        }
        return out;
    }

    const bool theorem3 = id.theorem == 3;
    const ExactWeightVector w_swapped = symmetrize(in.at_yx, in.at_xy, in.lambda_yx);
    out.first = branch_witness(w, Branch::first, params, theorem3);
    out.mirrored = branch_witness(w_swapped, Branch::mirrored, params, theorem3);
    if (out.first.holds) {
        out.branch = Branch::first;
    } else if (out.mirrored.holds) {
        out.branch = Branch::mirrored;
    }
    out.holds = out.branch != Branch::none;
    if (theorem3) {
        bool m_ok = bounded_by(in.at_xy, params.M) && bounded_by(in.at_yx, params.M);
        if (flags.m_bound_on_symmetrized) m_ok = m_ok && bounded_by(w, params.M) && bounded_by(w_swapped, params.M);
        out.m_bound_ok = m_ok;
        out.holds = out.holds && m_ok;
    }
    return out;
}

DecayReport check_orbit_decay(const OrbitRecord& orbit, const WeightFunction& weights, const ConditionParams& params,
                              ConditionFlags flags)
{
    DecayReport report;
    const auto& pts = orbit.points;
    const auto& dsq = orbit.step_distances_squared;
    for (std::size_t n = 1; n < dsq.size(); ++n) {
        DecayStep step;
        step.n = n;
        step.distance_sq = dsq[n];
        step.previous_distance_sq = dsq[n - 1];
        auto outcome = check_condition(ConditionId{1, 5}, weights, params, pts[n - 1], pts[n], flags);
        step.premise_holds = outcome.holds;
        step.branch = outcome.branch;
        if (step.premise_holds) {
            ++report.checked;
            step.decays = Rational(dsq[n]) <= params.A * dsq[n - 1];
            if (!step.decays) report.violations.push_back(n);
        } else {
            ++report.premise_failed;
        }
        report.steps.push_back(step);
    }
    return report;
}

} // namespace fpl
