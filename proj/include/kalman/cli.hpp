#pragma once

// Command implementations behind the kalman CLI. Each command returns structured results;
// render_* turn them into json, csv or text.

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "json.hpp"

#include "degrees.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "pairs.hpp"
#include "routes.hpp"

namespace kalman::cli {

using json = nlohmann::json;

enum class Format { json, csv, text };
enum class RouteSelector { closed, chern, homogeneous, all };

enum ExitCode : int { ok = 0, parameter_error = 2, route_disagreement = 3, input_error = 4 };

inline RouteSelector parse_route(const std::string& s) {
    if (s == "closed")
        return RouteSelector::closed;
    if (s == "chern")
        return RouteSelector::chern;
    if (s == "homogeneous")
        return RouteSelector::homogeneous;
    if (s == "all")
        return RouteSelector::all;
    throw ParameterError("unknown route '" + s + "'");
}

inline Format parse_format(const std::string& s) {
    if (s == "json")
        return Format::json;
    if (s == "csv")
        return Format::csv;
    if (s == "text")
        return Format::text;
    throw ParameterError("unknown format '" + s + "'");
}

/// One instance evaluated by one or more routes; all route values are equal.
struct DegreeRow {
    KalmanInstance instance;
    BigInt degree;
    std::vector<std::pair<Route, BigInt>> routes;

    std::string route_label() const {
        std::string s;
        for (const auto& [r, _] : routes)
            s += (s.empty() ? "" : "+") + route_name(r);
        return s;
    }
};

inline bool closed_applies(const KalmanInstance& inst) { return inst.symmetric || inst.dims.size() == 2; }

inline BigInt evaluate_route(const KalmanInstance& inst, Route r) {
    if (inst.symmetric) {
        switch (r) {
        case Route::closed_form:
            return symmetric_degree_closed(inst.d, inst.n, inst.order);
        case Route::chern_series:
            return symmetric_degree_chern(inst.d, inst.n, inst.order).degree;
        case Route::homogeneous_sum:
            return symmetric_degree_homogeneous(inst.d, inst.n, inst.order).degree;
        }
    }
    switch (r) {
    case Route::closed_form:
        if (inst.dims.size() != 2)
            throw ParameterError("closed route needs exactly two factors (matrices)");
        return matrix_degree_closed(inst.d, inst.dims[0], inst.dims[1]);
    case Route::chern_series:
        return general_degree_chern(inst.d, inst.dims).degree;
    case Route::homogeneous_sum:
        return general_degree_homogeneous(inst.d, inst.dims).degree;
    }
    throw ParameterError("unknown route");
}

/// Evaluates the selected routes; "all" means every applicable route and requires agreement.
inline DegreeRow compute_degree(const KalmanInstance& inst, RouteSelector sel) {
    inst.validate();
    std::vector<Route> routes;
    switch (sel) {
    case RouteSelector::closed:
        routes = {Route::closed_form};
        break;
    case RouteSelector::chern:
        routes = {Route::chern_series};
        break;
    case RouteSelector::homogeneous:
        routes = {Route::homogeneous_sum};
        break;
    case RouteSelector::all:
        if (closed_applies(inst))
            routes.push_back(Route::closed_form);
        routes.push_back(Route::chern_series);
        routes.push_back(Route::homogeneous_sum);
        break;
    }
    DegreeRow row{inst, 0, {}};
    for (auto r : routes)
        row.routes.emplace_back(r, evaluate_route(inst, r));
    row.degree = row.routes.front().second;
    for (const auto& [r, v] : row.routes)
        if (v != row.degree)
            throw RouteDisagreement("routes disagree on " + inst.describe() + ": " +
                                    route_name(row.routes.front().first) + "=" + row.degree.str() + ", " +
                                    route_name(r) + "=" + v.str());
    return row;
}

/// Applies fn to 0..count-1 on worker threads; results keep index order.
template <class T>
std::vector<T> parallel_map(std::size_t count, const std::function<T(std::size_t)>& fn) {
    std::vector<T> out(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                out[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t nthreads =
        std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(count, 1));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < nthreads; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

inline constexpr unsigned table_bound = 12;

/// Degrees for 1 <= d <= n <= max_n, 2 <= m <= max_m, ordered graded-lexicographically on (d, n, m).
inline std::vector<DegreeRow> run_table(unsigned max_n, unsigned max_m, RouteSelector sel = RouteSelector::all) {
    if (max_n < 1 || max_n > table_bound || max_m < 2 || max_m > table_bound)
        throw ParameterError("table bounds must satisfy 1 <= max_n <= 12 and 2 <= max_m <= 12");
    std::vector<std::tuple<unsigned, unsigned, unsigned>> keys;
    for (unsigned n = 1; n <= max_n; ++n)
        for (unsigned d = 1; d <= n; ++d)
            for (unsigned m = 2; m <= max_m; ++m)
                keys.emplace_back(d, n, m);
    std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
        const auto [d1, n1, m1] = a;
        const auto [d2, n2, m2] = b;
        if (d1 + n1 + m1 != d2 + n2 + m2)
            return d1 + n1 + m1 < d2 + n2 + m2;
        return a < b;
    });
    return parallel_map<DegreeRow>(keys.size(), [&](std::size_t i) {
        const auto [d, n, m] = keys[i];
        return compute_degree(KalmanInstance::general(d, {n, m}), sel);
    });
}

struct StabilizeResult {
    StabilizationReport report;
    Route route = Route::homogeneous_sum;
};

inline StabilizeResult run_stabilize(unsigned d, const std::vector<unsigned>& prefix, unsigned m_max,
                                     unsigned m_min = 2, RouteSelector sel = RouteSelector::homogeneous) {
    if (m_min < 1 || m_max < m_min)
        throw ParameterError("need 1 <= m_min <= m_max");
    if (m_max > 64)
        throw ParameterError("m_max must be <= 64");
    std::vector<unsigned> ms;
    for (unsigned m = m_min; m <= m_max; ++m)
        ms.push_back(m);
    KalmanInstance::general(d, [&] {
        auto dims = prefix;
        dims.push_back(m_min);
        return dims;
    }());
    if (sel == RouteSelector::all) {
        auto a = stabilization_check(d, prefix, ms, Route::homogeneous_sum);
        auto b = stabilization_check(d, prefix, ms, Route::chern_series);
        for (std::size_t i = 0; i < ms.size(); ++i)
            if (a.degrees[i].second != b.degrees[i].second)
                throw RouteDisagreement("stabilization routes disagree at m=" + std::to_string(ms[i]));
        return {std::move(a), Route::homogeneous_sum};
    }
    if (sel == RouteSelector::closed)
        throw ParameterError("stabilize supports routes homogeneous, chern, all");
    const Route r = sel == RouteSelector::chern ? Route::chern_series : Route::homogeneous_sum;
    return {stabilization_check(d, prefix, ms, r), r};
}

// ---- pair decisions -------------------------------------------------------

template <ExactField F>
struct DecideResult {
    PairDecision<F> unrestricted;
    bool proposition = false;
    EqualLambdaDecision<F> equal_lambda;
    bool agree() const { return unrestricted.exists == proposition; }
};

template <ExactField F>
DecideResult<F> run_decide(const Matrix<F>& a, const Vector<F>& v0) {
    DecideResult<F> r;
    r.unrestricted = decide_pair_in_line(a, v0);
    r.proposition = decide_pair_in_line_proposition(a, v0);
    r.equal_lambda = decide_equal_lambda_pair_in_line(a, v0);
    return r;
}

// ---- rendering ------------------------------------------------------------

inline json instance_json(const KalmanInstance& inst) {
    json j;
    j["d"] = inst.d;
    if (inst.symmetric) {
        j["n"] = inst.n;
        j["k"] = inst.order;
    } else {
        j["dims"] = inst.dims;
    }
    return j;
}

inline json row_json(const DegreeRow& row) {
    json j = instance_json(row.instance);
    j["degree"] = row.degree.str();
    json routes = json::object();
    for (const auto& [r, v] : row.routes)
        routes[route_name(r)] = v.str();
    j["routes"] = routes;
    return j;
}

inline std::string csv_header(const KalmanInstance& inst) {
    if (inst.symmetric)
        return "d,n,k,degree,route";
    std::string h = "d";
    for (std::size_t i = 0; i < inst.dims.size(); ++i)
        h += ",n_" + std::to_string(i + 1);
    return h + ",degree,route";
}

inline std::string csv_line(const DegreeRow& row) {
    std::ostringstream os;
    os << row.instance.d;
    if (row.instance.symmetric)
        os << ',' << row.instance.n << ',' << row.instance.order;
    else
        for (auto n : row.instance.dims)
            os << ',' << n;
    os << ',' << row.degree << ',' << row.route_label();
    return os.str();
}

inline std::string text_line(const DegreeRow& row) {
    return "degree " + row.instance.describe() + " = " + row.degree.str() + "  [" + row.route_label() + "]";
}

inline std::string render_degree(const std::string& command, const DegreeRow& row, Format f) {
    switch (f) {
    case Format::json: {
        json j = row_json(row);
        j["command"] = command;
        return j.dump(2) + "\n";
    }
    case Format::csv:
        return csv_header(row.instance) + "\n" + csv_line(row) + "\n";
    case Format::text:
        return text_line(row) + "\n";
    }
    return {};
}

inline std::string render_table(const std::vector<DegreeRow>& rows, Format f) {
    std::ostringstream os;
    switch (f) {
    case Format::json: {
        json j;
        j["command"] = "table";
        j["rows"] = json::array();
        for (const auto& r : rows)
            j["rows"].push_back(row_json(r));
        os << j.dump(2) << "\n";
        break;
    }
    case Format::csv:
        os << "d,n_1,n_2,degree,route\n";
        for (const auto& r : rows)
            os << csv_line(r) << "\n";
        break;
    case Format::text:
        os << "  d   n   m  degree\n";
        for (const auto& r : rows) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%3u %3u %3u  ", r.instance.d, r.instance.dims[0], r.instance.dims[1]);
            os << buf << r.degree << "\n";
        }
        break;
    }
    return os.str();
}

inline std::string render_stabilize(const StabilizeResult& res, Format f) {
    const auto& rep = res.report;
    std::ostringstream os;
    switch (f) {
    case Format::json: {
        json j;
        j["command"] = "stabilize";
        j["d"] = rep.d;
        j["prefix"] = rep.prefix;
        j["boundary"] = rep.boundary;
        j["route"] = route_name(res.route);
        j["degrees"] = json::array();
        for (const auto& [m, deg] : rep.degrees)
            j["degrees"].push_back({{"m", m}, {"degree", deg.str()}});
        j["stabilized"] = rep.stabilized;
        j["stable_degree"] = rep.stable_degree ? json(rep.stable_degree->str()) : json(nullptr);
        os << j.dump(2) << "\n";
        break;
    }
    case Format::csv: {
        os << "d";
        for (std::size_t i = 0; i <= rep.prefix.size(); ++i)
            os << ",n_" << i + 1;
        os << ",degree,route\n";
        for (const auto& [m, deg] : rep.degrees) {
            os << rep.d;
            for (auto n : rep.prefix)
                os << ',' << n;
            os << ',' << m << ',' << deg << ',' << route_name(res.route) << "\n";
        }
        break;
    }
    case Format::text:
        for (const auto& [m, deg] : rep.degrees)
            os << "m=" << m << " degree=" << deg << (m == rep.boundary ? "  (boundary format)" : "") << "\n";
        os << "boundary format: m = " << rep.boundary << "\n";
        if (!rep.stable_degree)
            os << "no m >= boundary in range\n";
        else if (rep.stabilized)
            os << "stabilized at m = " << rep.boundary << " with degree " << *rep.stable_degree << "\n";
        else
            os << "NOT stabilized for m >= " << rep.boundary << "\n";
        break;
    }
    return os.str();
}

template <ExactField F>
json pair_json(const SingularPair<F>& p) {
    return {{"v", io::to_json(p.v())},
            {"w", io::to_json(p.w())},
            {"lambda1", io::to_json(p.lambda1())},
            {"lambda2", io::to_json(p.lambda2())}};
}

template <ExactField F>
std::string pair_text(const SingularPair<F>& p) {
    auto vec = [](const Vector<F>& v) {
        std::string s = "(";
        for (std::size_t i = 0; i < v.size(); ++i)
            s += (i ? ", " : "") + to_string(v[i]);
        return s + ")";
    };
    return "v=" + vec(p.v()) + " w=" + vec(p.w()) + " lambda1=" + to_string(p.lambda1()) +
           " lambda2=" + to_string(p.lambda2());
}

enum class DecideVariant { unrestricted, equal_lambda, all };

inline DecideVariant parse_variant(const std::string& s) {
    if (s == "unrestricted")
        return DecideVariant::unrestricted;
    if (s == "equal-lambda")
        return DecideVariant::equal_lambda;
    if (s == "all")
        return DecideVariant::all;
    throw ParameterError("unknown variant '" + s + "'");
}

template <ExactField F>
std::string render_decide(const DecideResult<F>& r, DecideVariant variant, Format f) {
    const bool show_u = variant != DecideVariant::equal_lambda;
    const bool show_e = variant != DecideVariant::unrestricted;
    const auto& eq = r.equal_lambda;
    std::ostringstream os;
    switch (f) {
    case Format::json: {
        json j;
        j["command"] = "decide-pair";
        j["field"] = is_gaussian_v<F> ? "gaussian" : "rational";
        if (show_u) {
            j["unrestricted"] = {{"exists", r.unrestricted.exists},
                                 {"proposition", r.proposition},
                                 {"agree", r.agree()},
                                 {"witness", r.unrestricted.witness ? pair_json(*r.unrestricted.witness) : json(nullptr)}};
        }
        if (show_e) {
            j["equal_lambda"] = {{"exists", eq.exists},
                                 {"needs_square_root", eq.needs_square_root},
                                 {"mu", eq.mu ? io::to_json(*eq.mu) : json(nullptr)},
                                 {"witness", eq.witness ? pair_json(*eq.witness) : json(nullptr)}};
        }
        os << j.dump(2) << "\n";
        break;
    }
    case Format::csv:
        os << std::boolalpha << "variant,exists,proposition,agree,exact_witness\n";
        if (show_u)
            os << "unrestricted," << r.unrestricted.exists << ',' << r.proposition << ',' << r.agree() << ','
               << bool(r.unrestricted.witness) << "\n";
        if (show_e)
            os << "equal-lambda," << eq.exists << ",,," << bool(eq.witness) << "\n";
        break;
    case Format::text:
        if (show_u) {
            os << "unrestricted: " << (r.unrestricted.exists ? "pair exists" : "no pair") << "\n";
            os << "proposition:  " << (r.proposition ? "pair exists" : "no pair")
               << (r.agree() ? "" : "  (DISAGREES)") << "\n";
            if (r.unrestricted.witness)
                os << "witness: " << pair_text(*r.unrestricted.witness) << "\n";
        }
        if (show_e) {
            os << "equal-lambda: " << (eq.exists ? "pair exists" : "no pair");
            if (eq.needs_square_root)
                os << " (witness needs a square root of mu = " << to_string(*eq.mu) << ")";
            os << "\n";
            if (eq.witness)
                os << "equal-lambda witness: " << pair_text(*eq.witness) << "\n";
        }
        break;
    }
    return os.str();
}

} // namespace kalman::cli
