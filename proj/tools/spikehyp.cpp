#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "cli_support.hpp"
#include "spikehyp/density.hpp"
#include "spikehyp/sphere.hpp"

namespace {

using namespace spikehyp;
using cli::Report;

enum Exit { kOk = 0, kDomain = 2, kConvergence = 3, kIo = 4 };

struct JobSpec {
    std::string command;
    std::string kernel_case;
    std::string a_text;
    std::string b_text;
    double alpha = 2.0;
    int r = 0;
    double x = 0.0;
    std::string y_text;
    std::string y_file;
    double tol = 1e-11;
    std::size_t nodes = 1u << 20;
    std::size_t samples = 0;
    std::uint64_t seed = 1;
    std::string method = "auto";
    std::string route = "auto";
    std::string format = "json";
    double radius_scale = 1.0;
    double leg_scale = 1.0;
    int p = 0;
    int n1 = 0;
    int n2 = 0;
    double h = 0.0;
    std::string f_text;
    std::string f_file;
    bool no_wall_time = false;
};

struct Resolved {
    ParameterVectors params;
    std::optional<KernelCase> tag;
    Spectrum y;
    SpikeArgument spike;
};

std::vector<double> values_from(const std::string& inline_text, const std::string& file, const char* what)
{
    if (!file.empty()) {
        if (!inline_text.empty())
            throw DomainError(std::string("give --") + what + " or --" + what + "-file, not both");
        return cli::read_real_file(file);
    }
    return cli::parse_real_list(inline_text);
}

QuadratureSettings quadrature_of(const JobSpec& job)
{
    QuadratureSettings q;
    q.tol = job.tol;
    q.max_nodes = job.nodes;
    q.radius_scale = job.radius_scale;
    q.leg_height_scale = job.leg_scale;
    return q;
}

ContourOptions contour_options(const JobSpec& job, std::optional<KernelCase> tag)
{
    ContourOptions o;
    o.quadrature = quadrature_of(job);
    o.kernel = tag;
    return o;
}

std::optional<Route> route_of(const std::string& name)
{
    if (name == "auto")
        return std::nullopt;
    if (name == "i")
        return Route::integer;
    if (name == "ii")
        return Route::fractional;
    return Route::half_integer;
}

Resolved resolve_spiked(const JobSpec& job)
{
    Resolved res;
    res.params.a = cli::parse_complex_list(job.a_text);
    res.params.b = cli::parse_complex_list(job.b_text);
    if (!job.kernel_case.empty()) {
        res.tag = parse_kernel_case(job.kernel_case);
        const auto order = kernel_case_order(*res.tag);
        if (res.params.a.size() != order->first || res.params.b.size() != order->second)
            throw DomainError("--case " + job.kernel_case + " needs " + std::to_string(order->first) +
                              " values in --a and " + std::to_string(order->second) + " in --b");
    }
    res.params.check_denominators();
    res.y.y = values_from(job.y_text, job.y_file, "y");
    res.y.check();
    const int r = job.r > 0 ? job.r : static_cast<int>(res.y.r());
    if (static_cast<std::size_t>(r) != res.y.r())
        throw DomainError("--r must equal the number of eigenvalues in --y");
    res.spike = {job.x, r, job.alpha};
    if (job.x < 0.0)
        throw DomainError("--x must be nonnegative");
    if (!(job.alpha > 0.0))
        throw DomainError("--alpha must be positive");
    return res;
}

std::string join(const std::vector<complex>& v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? "," : "") + cli::format_complex(v[i]);
    return out;
}

std::string join(const std::vector<double>& v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? "," : "") + cli::format_number(v[i]);
    return out;
}

Report common_params(const JobSpec& job)
{
    Report p;
    p.set("tol", job.tol);
    p.set("nodes", static_cast<long long>(job.nodes));
    p.set("radius_scale", job.radius_scale);
    p.set("leg_height_scale", job.leg_scale);
    p.set("format", job.format);
    return p;
}

Report spiked_params(const JobSpec& job, const Resolved& res)
{
    Report p;
    const KernelCase tag = res.tag.value_or(ScalarKernel::from(res.params).tag);
    p.set("case", kernel_case_name(tag));
    p.set("a", join(res.params.a));
    p.set("b", join(res.params.b));
    p.set("alpha", res.spike.alpha);
    p.set("r", static_cast<long long>(res.spike.r));
    p.set("x", res.spike.x);
    p.set("y", join(res.y.y));
    p.set("method", job.method);
    p.set("route", job.route);
    p.set("samples", static_cast<long long>(job.samples));
    p.set("seed", static_cast<long long>(job.seed));
    p.set("tol", job.tol);
    p.set("nodes", static_cast<long long>(job.nodes));
    p.set("radius_scale", job.radius_scale);
    p.set("leg_height_scale", job.leg_scale);
    p.set("format", job.format);
    return p;
}

void put_result(Report& report, const EvalResult& result)
{
    report.set("value_re", result.value.real());
    report.set("value_im", result.value.imag());
    report.set("err_estimate", result.err_estimate);
    report.set("method", method_name(result.method));
    report.set("effort", static_cast<long long>(result.effort));
}

Report route_entry(const EvalResult& result)
{
    Report r;
    put_result(r, result);
    return r;
}

EvalResult sphere_of(const JobSpec& job, const Resolved& res)
{
    SphereSettings s;
    s.samples = job.samples > 0 ? job.samples : 1000000;
    s.seed = job.seed;
    return sphere_average(res.params, res.spike, res.y, s);
}

void run_eval(const JobSpec& job, Report& report, bool oracle_only)
{
    const Resolved res = resolve_spiked(job);
    report.set("params", spiked_params(job, res));
    EvalResult result;
    if (oracle_only || job.method == "series")
        result = series_eval(res.params, res.spike, res.y, {std::min(job.tol * 0.1, 1e-12), 5000});
    else if (job.method == "sphere")
        result = sphere_of(job, res);
    else
        result = eval_contour(res.params, res.spike, res.y, contour_options(job, res.tag), route_of(job.route));
    put_result(report, result);
}

void run_compare(const JobSpec& job, Report& report)
{
    const Resolved res = resolve_spiked(job);
    report.set("params", spiked_params(job, res));
    std::vector<EvalResult> results;
    std::vector<Report> entries;
    if (res.spike.x == 0.0) {
        results.push_back(eval_contour(res.params, res.spike, res.y, contour_options(job, res.tag)));
    } else {
        res.spike.check();
        for (Route route : admissible_routes(res.spike))
            results.push_back(eval_contour(res.params, res.spike, res.y, contour_options(job, res.tag), route));
    }
    if (job.method != "contour") {
        try {
            results.push_back(series_eval(res.params, res.spike, res.y, {1e-13, 5000}));
        } catch (const DomainError&) {
            // outside the series domain; contour routes only
        }
    }
    if (res.spike.alpha == 2.0 && (job.samples > 0 || job.method == "sphere"))
        results.push_back(sphere_of(job, res));
    for (const auto& r : results)
        entries.push_back(route_entry(r));

    std::vector<Report> gaps;
    double worst = 0.0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        for (std::size_t j = i + 1; j < results.size(); ++j) {
            Report g;
            const double abs_gap = std::abs(results[i].value - results[j].value);
            const double rel_gap = abs_gap / std::abs(results[j].value);
            g.set("first", method_name(results[i].method));
            g.set("second", method_name(results[j].method));
            g.set("abs", abs_gap);
            g.set("rel", rel_gap);
            gaps.push_back(g);
            if (results[i].method != Method::sphere_mc && results[j].method != Method::sphere_mc)
                worst = std::max(worst, rel_gap);
        }
    }
    put_result(report, results.front());
    report.set("routes", entries);
    report.set("gaps", gaps);
    report.set("max_rel_gap", worst);
}

TwoSampleDesign design_of(const JobSpec& job, std::size_t count)
{
    const int p = job.p > 0 ? job.p : static_cast<int>(count);
    if (static_cast<std::size_t>(p) != count)
        throw DomainError("--p must equal the number of values in --f");
    TwoSampleDesign d{p, job.n1, job.n2};
    return d;
}

void run_density(const JobSpec& job, Report& report)
{
    const EigenvalueConfig f{values_from(job.f_text, job.f_file, "f")};
    f.check();
    const TwoSampleDesign design = design_of(job, f.f.size());
    design.check();
    if (job.h < 0.0)
        throw DomainError("--h must be positive (or 0 for the null density)");
    Report p;
    p.set("p", static_cast<long long>(design.p));
    p.set("n1", static_cast<long long>(design.n1));
    p.set("n2", static_cast<long long>(design.n2));
    p.set("h", job.h);
    p.set("f", join(f.f));
    p.set("tol", job.tol);
    p.set("nodes", static_cast<long long>(job.nodes));
    p.set("format", job.format);
    report.set("params", p);
    std::optional<SpikeAlternative> alt;
    if (job.h > 0.0)
        alt = SpikeAlternative::from_h(job.h);
    put_result(report, joint_density(f, alt, design, contour_options(job, std::nullopt)));
}

void run_lr(const JobSpec& job, Report& report, bool limit)
{
    const auto values = values_from(job.f_text, job.f_file, "f");
    const auto alt = SpikeAlternative::from_h(job.h);
    Report p;
    p.set("h", job.h);
    p.set("tau", alt.tau());
    if (limit) {
        const int dim = job.p > 0 ? job.p : static_cast<int>(values.size());
        if (job.n1 < 1)
            throw DomainError("--n1 must be positive");
        p.set("p", static_cast<long long>(dim));
        p.set("n1", static_cast<long long>(job.n1));
        p.set("mu", join(values));
        p.set("tol", job.tol);
        p.set("nodes", static_cast<long long>(job.nodes));
        p.set("format", job.format);
        report.set("params", p);
        put_result(report, lr_limit(alt.tau(), values, dim, job.n1, contour_options(job, std::nullopt)));
        return;
    }
    const EigenvalueConfig f{values};
    f.check();
    const TwoSampleDesign design = design_of(job, values.size());
    design.check();
    p.set("p", static_cast<long long>(design.p));
    p.set("n1", static_cast<long long>(design.n1));
    p.set("n2", static_cast<long long>(design.n2));
    p.set("f", join(values));
    p.set("lambda", join(f.lambda()));
    p.set("tol", job.tol);
    p.set("nodes", static_cast<long long>(job.nodes));
    p.set("format", job.format);
    report.set("params", p);
    put_result(report, lr_contour(alt.tau(), f.lambda(), design, contour_options(job, std::nullopt)));
}

void add_spiked_options(CLI::App* sub, JobSpec& job)
{
    sub->add_option("--case", job.kernel_case, "Kernel case")->check(CLI::IsMember({"0F0", "0F1", "1F0", "1F1", "2F1"}));
    sub->add_option("--a", job.a_text, "Numerator parameters, comma separated (re+imi allowed)");
    sub->add_option("--b", job.b_text, "Denominator parameters, comma separated");
    sub->add_option("--alpha", job.alpha, "Family index (2 real, 1 complex)")->capture_default_str();
    sub->add_option("--r", job.r, "Matrix dimension (defaults to the length of y)");
    sub->add_option("--x", job.x, "Nonzero eigenvalue of X")->required();
    auto* y = sub->add_option("--y", job.y_text, "Eigenvalues of Y, comma separated");
    auto* yf = sub->add_option("--y-file", job.y_file, "Eigenvalues of Y, one per line");
    y->excludes(yf);
    sub->add_option("--samples", job.samples, "Sphere Monte Carlo samples");
    sub->add_option("--seed", job.seed, "Sphere Monte Carlo seed")->capture_default_str();
    sub->add_option("--method", job.method, "Evaluator")
        ->check(CLI::IsMember({"contour", "series", "sphere", "auto"}))
        ->capture_default_str();
    sub->add_option("--route", job.route, "Contour route")->check(CLI::IsMember({"auto", "i", "ii", "iii"}))
        ->capture_default_str();
}

void add_density_options(CLI::App* sub, JobSpec& job, bool limit)
{
    sub->add_option("--p", job.p, "Dimension (defaults to the number of f values)");
    sub->add_option("--n1", job.n1, "First sample degrees of freedom")->required();
    if (!limit)
        sub->add_option("--n2", job.n2, "Second sample degrees of freedom")->required();
    sub->add_option("--h", job.h, "Spike size h (tau = h/(1+h))")->required(limit || sub->get_name() == "lr");
    auto* f = sub->add_option("--f", job.f_text, limit ? "Values mu_j, comma separated" : "Eigenvalues f_j, comma separated");
    auto* ff = sub->add_option("--f-file", job.f_file, "Values, one per line");
    f->excludes(ff);
}

void add_common_options(CLI::App* sub, JobSpec& job)
{
    sub->add_option("--tol", job.tol, "Quadrature tolerance")->capture_default_str();
    sub->add_option("--nodes", job.nodes, "Quadrature node budget")->capture_default_str();
    sub->add_option("--format", job.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    sub->add_option("--radius-scale", job.radius_scale, "Scale the contour radius")->capture_default_str();
    sub->add_option("--leg-scale", job.leg_scale, "Scale the keyhole leg height")->capture_default_str();
    sub->add_flag("--no-wall-time", job.no_wall_time, "Report wall_ms as 0 for byte-identical reruns");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Rank-one spiked hypergeometric functions of two matrix arguments"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);
    JobSpec job;
    struct Sub {
        const char* name;
        const char* help;
    };
    for (const Sub& s : {Sub{"eval", "Evaluate by contour integral (or --method series/sphere)"},
                         Sub{"oracle", "Evaluate the Jack-polynomial series"},
                         Sub{"compare", "Evaluate every admissible route and report pairwise gaps"}}) {
        auto* sub = app.add_subcommand(s.name, s.help);
        add_spiked_options(sub, job);
        add_common_options(sub, job);
    }
    for (const Sub& s : {Sub{"density", "Joint eigenvalue density"}, Sub{"lr", "Likelihood ratio (contour form)"},
                         Sub{"lr-limit", "Likelihood ratio as n2 grows"}}) {
        auto* sub = app.add_subcommand(s.name, s.help);
        add_density_options(sub, job, std::string(s.name) == "lr-limit");
        add_common_options(sub, job);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kDomain;
    }
    job.command = app.get_subcommands().front()->get_name();

    Report report;
    report.set("command", job.command);
    const auto start = std::chrono::steady_clock::now();
    try {
        if (job.command == "eval")
            run_eval(job, report, false);
        else if (job.command == "oracle")
            run_eval(job, report, true);
        else if (job.command == "compare")
            run_compare(job, report);
        else if (job.command == "density")
            run_density(job, report);
        else if (job.command == "lr")
            run_lr(job, report, false);
        else
            run_lr(job, report, true);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomain;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConvergence;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    }
    const double wall =
        job.no_wall_time ? 0.0 : std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report.set("wall_ms", wall);
    const std::string text = job.format == "csv" ? report.csv() : report.json() + "\n";
    std::fwrite(text.data(), 1, text.size(), stdout);
    if (std::fflush(stdout) != 0 || std::ferror(stdout)) {
        std::cerr << "error: failed to write the report\n";
        return kIo;
    }
    return kOk;
}
