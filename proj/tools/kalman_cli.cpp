// kalman: degrees of Kalman varieties and singular-pair decisions from the command line.

#include <fstream>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"

#include "kalman/cli.hpp"

namespace {

using namespace kalman;
using namespace kalman::cli;

struct Common {
    std::string route = "all";
    std::string format = "text";
    std::string out;
};

void add_common(CLI::App* sub, Common& c, const std::string& default_route) {
    c.route = default_route;
    sub->add_option("--route", c.route, "closed|chern|homogeneous|all")
        ->check(CLI::IsMember({"closed", "chern", "homogeneous", "all"}))
        ->default_str(default_route);
    sub->add_option("--format", c.format, "json|csv|text")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--out", c.out, "write output to FILE instead of stdout");
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f)
        throw ParameterError("cannot write " + out);
    f << text;
}

template <ExactField F>
int decide(const Matrix<F>& a, const Vector<F>& v0, DecideVariant variant, Format fmt, const std::string& out) {
    const auto r = run_decide(a, v0);
    emit(render_decide(r, variant, fmt), out);
    return r.agree() ? ExitCode::ok : ExitCode::route_disagreement;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Degrees of Kalman varieties of tensors and exact singular-pair decisions"};
    app.require_subcommand(1);

    Common c_sym, c_tensor, c_matrix, c_table, c_stab, c_decide, c_tuple;
    unsigned d = 1, n = 1, k = 2, m = 1, max_n = 4, max_m = 3, m_max = 8, m_min = 2;
    std::vector<unsigned> dims, prefix;
    std::string matrix_file, v0_text, variant = "all";

    auto* sym = app.add_subcommand("degree-sym", "degree for symmetric tensors of order k on K^n");
    sym->add_option("--d", d, "dimension of L")->required();
    sym->add_option("--n", n, "ambient dimension")->required();
    sym->add_option("--k", k, "tensor order (>= 2)")->required();
    add_common(sym, c_sym, "all");

    auto* tensor = app.add_subcommand("degree-tensor", "degree for tensors in K^{n_1} x ... x K^{n_k}");
    tensor->add_option("--d", d, "dimension of L in K^{n_1}")->required();
    tensor->add_option("--dims", dims, "n_1,...,n_k")->required()->delimiter(',');
    add_common(tensor, c_tensor, "all");

    auto* matrix = app.add_subcommand("degree-matrix", "degree for n x m matrices");
    matrix->add_option("--d", d, "dimension of L in K^n")->required();
    matrix->add_option("--n", n)->required();
    matrix->add_option("--m", m)->required();
    add_common(matrix, c_matrix, "all");

    auto* table = app.add_subcommand("table", "matrix degrees for 1 <= d <= n <= max-n, 2 <= m <= max-m");
    table->add_option("--max-n", max_n)->default_val(4);
    table->add_option("--max-m", max_m)->default_val(3);
    add_common(table, c_table, "all");

    auto* stab = app.add_subcommand("stabilize", "degrees of (d; prefix, m) for m = m-min..m-max");
    stab->add_option("--d", d)->required();
    stab->add_option("--prefix", prefix, "n_1,...,n_{k-1}")->required()->delimiter(',');
    stab->add_option("--m-max", m_max)->required();
    stab->add_option("--m-min", m_min)->default_val(2);
    add_common(stab, c_stab, "homogeneous");

    auto* dec = app.add_subcommand("decide-pair", "does A have a singular pair (v, w) with v in span(v0)?");
    dec->add_option("--matrix", matrix_file, "JSON matrix file (array of rows, or {\"matrix\":..., \"v0\":...})")
        ->required();
    dec->add_option("--v0", v0_text, "comma-separated rationals spanning the line L");
    dec->add_option("--variant", variant, "unrestricted|equal-lambda|all")
        ->check(CLI::IsMember({"unrestricted", "equal-lambda", "all"}));
    dec->add_option("--format", c_decide.format, "json|csv|text")->check(CLI::IsMember({"json", "csv", "text"}));
    dec->add_option("--out", c_decide.out, "write output to FILE instead of stdout");

    auto* tuple = app.add_subcommand("tuple-count", "generic number of singular k-tuples");
    tuple->add_option("--dims", dims, "n_1,...,n_k")->required()->delimiter(',');
    add_common(tuple, c_tuple, "all");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return ExitCode::parameter_error;
    }

    try {
        if (*sym) {
            const auto row = compute_degree(KalmanInstance::symmetric_tensor(d, n, k), parse_route(c_sym.route));
            emit(render_degree("degree-sym", row, parse_format(c_sym.format)), c_sym.out);
        } else if (*tensor) {
            const auto row = compute_degree(KalmanInstance::general(d, dims), parse_route(c_tensor.route));
            emit(render_degree("degree-tensor", row, parse_format(c_tensor.format)), c_tensor.out);
        } else if (*matrix) {
            const auto row = compute_degree(KalmanInstance::general(d, {n, m}), parse_route(c_matrix.route));
            emit(render_degree("degree-matrix", row, parse_format(c_matrix.format)), c_matrix.out);
        } else if (*tuple) {
            if (dims.empty())
                throw ParameterError("dims must be nonempty");
            const auto row = compute_degree(KalmanInstance::general(dims.front(), dims), parse_route(c_tuple.route));
            emit(render_degree("tuple-count", row, parse_format(c_tuple.format)), c_tuple.out);
        } else if (*table) {
            const auto rows = run_table(max_n, max_m, parse_route(c_table.route));
            emit(render_table(rows, parse_format(c_table.format)), c_table.out);
        } else if (*stab) {
            const auto res = run_stabilize(d, prefix, m_max, m_min, parse_route(c_stab.route));
            emit(render_stabilize(res, parse_format(c_stab.format)), c_stab.out);
        } else if (*dec) {
            const auto doc = io::read_json_file(matrix_file);
            const auto& mj = doc.is_object() ? doc.at("matrix") : doc;
            io::AnyVector v0;
            if (!v0_text.empty())
                v0 = io::parse_vector_list(v0_text);
            else if (doc.is_object() && doc.contains("v0"))
                v0 = io::parse_any_vector(doc.at("v0"));
            else
                throw ParameterError("decide-pair needs --v0 or a \"v0\" field in the input file");
            const auto a = io::parse_matrix(mj);
            const auto fmt = parse_format(c_decide.format);
            const auto var = parse_variant(variant);
            if (auto* ar = std::get_if<Matrix<Rational>>(&a); ar && std::holds_alternative<Vector<Rational>>(v0))
                return decide(*ar, std::get<Vector<Rational>>(v0), var, fmt, c_decide.out);
            const auto ag = std::holds_alternative<Matrix<Rational>>(a) ? io::promote(std::get<Matrix<Rational>>(a))
                                                                         : std::get<Matrix<GaussianRational>>(a);
            const auto vg = std::holds_alternative<Vector<Rational>>(v0)
                                ? io::promote(std::get<Vector<Rational>>(v0))
                                : std::get<Vector<GaussianRational>>(v0);
            return decide(ag, vg, var, fmt, c_decide.out);
        }
    } catch (const RouteDisagreement& e) {
        std::cerr << "error: " << e.what() << "\n";
        return ExitCode::route_disagreement;
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return ExitCode::input_error;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return ExitCode::input_error;
    } catch (const ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return ExitCode::parameter_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return ExitCode::ok;
}
