// shearwave command line front-end. Links the C API of libshearwave only;
// everything here is flag parsing, config validation, and artifact emission.

#include <cstdio>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "shearwave/shearwave.h"

namespace {

using nlohmann::json;

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct ConfigError {
    std::string message;
};

struct RunConfig {
    std::string profile_json;
    double gravity = 0.0;
    double surface_tension = 0.0;
    int steps_per_layer = 0;  // 0 = library default
    std::string output_dir = ".";
    std::string hash;         // fnv1a64 of the raw file bytes
};

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void reject_unknown(const json& j, const std::vector<std::string>& allowed,
                    const std::string& where) {
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const auto& k : allowed)
            ok = ok || item.key() == k;
        if (!ok)
            throw ConfigError{"config: unknown key '" + item.key() + "' in " + where};
    }
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError{"config: cannot read '" + path + "'"};
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string bytes = buf.str();

    json j;
    try {
        j = json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw ConfigError{std::string("config: ") + e.what()};
    }
    if (!j.is_object())
        throw ConfigError{"config: top level must be an object"};
    reject_unknown(j, {"profile", "gravity", "surface_tension", "solver", "output_dir"},
                   "top level");

    RunConfig cfg;
    cfg.hash = hex64(fnv1a64(bytes));
    if (!j.contains("profile"))
        throw ConfigError{"config: missing field 'profile'"};
    cfg.profile_json = j["profile"].dump();

    if (!j.contains("gravity") || !j["gravity"].is_number())
        throw ConfigError{"config: field 'gravity' must be a number"};
    cfg.gravity = j["gravity"].get<double>();
    if (!(cfg.gravity > 0.0))
        throw ConfigError{"config: field 'gravity' must be > 0"};

    if (j.contains("surface_tension")) {
        if (!j["surface_tension"].is_number())
            throw ConfigError{"config: field 'surface_tension' must be a number"};
        cfg.surface_tension = j["surface_tension"].get<double>();
        if (!(cfg.surface_tension >= 0.0))
            throw ConfigError{"config: field 'surface_tension' must be >= 0"};
    }
    if (j.contains("solver")) {
        if (!j["solver"].is_object())
            throw ConfigError{"config: field 'solver' must be an object"};
        reject_unknown(j["solver"], {"steps_per_layer"}, "solver");
        if (j["solver"].contains("steps_per_layer")) {
            if (!j["solver"]["steps_per_layer"].is_number_integer())
                throw ConfigError{"config: solver.steps_per_layer must be an integer"};
            cfg.steps_per_layer = j["solver"]["steps_per_layer"].get<int>();
            if (cfg.steps_per_layer < 2 || cfg.steps_per_layer > 2000000)
                throw ConfigError{"config: solver.steps_per_layer out of range"};
        }
    }
    if (j.contains("output_dir")) {
        if (!j["output_dir"].is_string())
            throw ConfigError{"config: field 'output_dir' must be a string"};
        cfg.output_dir = j["output_dir"].get<std::string>();
    }
    return cfg;
}

struct Profile {
    sw_profile* p = nullptr;
    ~Profile() { sw_profile_free(p); }
};

void open_profile(const RunConfig& cfg, Profile& out) {
    if (sw_profile_from_json(cfg.profile_json.c_str(), &out.p) != SW_OK)
        throw ConfigError{std::string("config: profile: ") + sw_last_error()};
}

[[noreturn]] void numeric_failure(const std::string& op, const std::string& params) {
    std::cerr << "error: " << op << " failed (" << params << "): " << sw_last_error() << "\n";
    std::exit(kExitNumeric);
}

class Csv {
  public:
    Csv(const std::string& path, const std::string& columns, const std::string& hash)
        : f_(std::fopen(path.c_str(), "wb")), path_(path) {
        if (!f_) {
            std::cerr << "error: cannot open '" << path << "' for writing\n";
            std::exit(kExitNumeric);
        }
        const std::string header = "# " + columns + " config=" + hash + "\n";
        std::fwrite(header.data(), 1, header.size(), f_);
    }
    ~Csv() {
        if (f_) std::fclose(f_);
    }
    void row(const std::vector<double>& vals) {
        std::string line;
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (i) line += ",";
            line += fmt17(vals[i]);
        }
        line += "\n";
        std::fwrite(line.data(), 1, line.size(), f_);
    }
    void note_written() const { std::cerr << "wrote " << path_ << "\n"; }

  private:
    std::FILE* f_;
    std::string path_;
};

std::string out_path(const std::string& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    return dir + "/" + name;
}

// Minimal static SVG: surface profile plus interface streamlines.
void write_svg(const std::string& path, const std::vector<double>& q,
               const std::vector<std::vector<double>>& curves, double depth) {
    std::ofstream svg(path, std::ios::binary);
    if (!svg) {
        std::cerr << "error: cannot open '" << path << "' for writing\n";
        std::exit(kExitNumeric);
    }
    const double w = 760.0, h = 420.0, m = 30.0;
    double ymin = -depth, ymax = 0.0;
    for (const auto& c : curves)
        for (double v : c) {
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    const double yspan = (ymax - ymin) > 0 ? (ymax - ymin) : 1.0;
    const double qmax = q.empty() ? 1.0 : q.back();
    auto X = [&](double qq) { return m + (w - 2 * m) * qq / qmax; };
    auto Y = [&](double yy) { return h - m - (h - 2 * m) * (yy - ymin) / yspan; };

    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // bed
    svg << "<line x1=\"" << X(0) << "\" y1=\"" << Y(-depth) << "\" x2=\"" << X(qmax) << "\" y2=\""
        << Y(-depth) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    const char* colors[] = {"#004488", "#bb5566", "#228833", "#aa3377"};
    for (std::size_t c = 0; c < curves.size(); ++c) {
        svg << "<polyline fill=\"none\" stroke=\"" << colors[c % 4]
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < q.size(); ++i)
            svg << X(q[i]) << "," << Y(curves[c][i]) << " ";
        svg << "\"/>\n";
    }
    svg << "</svg>\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"steady periodic capillary-gravity waves on piecewise-constant vorticity "
                 "shear currents"};
    app.require_subcommand(1);

    std::string config_path, out_dir, svg_path;
    double lambda = 0.0, mu_min = 0.0, mu_max = 10.0, amplitude = 0.0;
    double d1 = 1.0, d2 = 1.0, gamma1 = 0.0, gamma2 = 0.0, grav = 9.81, sigma = 0.0;
    double a_p1 = 1.0, theta1 = 1.0, theta2 = 1.0;
    int samples = 200, k = 1, k_max = 3, n_div = 0, nq = 128, np = 100;

    const auto samples_range = CLI::Range(2, 100000000);

    auto* c_laminar = app.add_subcommand("laminar", "laminar flow table (p, b, H, gamma, Gamma)");
    c_laminar->add_option("--config", config_path)->required();
    c_laminar->add_option("--lambda", lambda)->required();
    c_laminar->add_option("--samples", samples)->check(samples_range);
    c_laminar->add_option("--out", out_dir);

    auto* c_lambda0 = app.add_subcommand("lambda0", "smallest squared surface speed with a "
                                                    "neutral long-wave mode");
    c_lambda0->add_option("--config", config_path)->required();

    auto* c_xi = app.add_subcommand("xi", "Xi(lambda, mu) scan in mu");
    c_xi->add_option("--config", config_path)->required();
    c_xi->add_option("--lambda", lambda)->required();
    c_xi->add_option("--mu-min", mu_min);
    c_xi->add_option("--mu-max", mu_max)->required();
    c_xi->add_option("--samples", samples)->check(samples_range);
    c_xi->add_option("--out", out_dir);

    auto* c_mu = app.add_subcommand("mu-curve", "zero curve mu(lambda) from lambda0 up to "
                                                "--lambda");
    c_mu->add_option("--config", config_path)->required();
    c_mu->add_option("--lambda", lambda)->required();
    c_mu->add_option("--samples", samples)->check(samples_range);
    c_mu->add_option("--out", out_dir);

    auto* c_bif = app.add_subcommand("bifurcate", "bifurcation points lambda_k and eigenfunctions");
    c_bif->add_option("--config", config_path)->required();
    c_bif->add_option("--k-max", k_max)->check(CLI::PositiveNumber);
    c_bif->add_option("--n", n_div)->description("period divisor; 0 = minimal")->check(CLI::NonNegativeNumber);
    c_bif->add_option("--out", out_dir);

    auto* c_disp = app.add_subcommand("dispersion", "positive roots sqrt(lambda) of the two-layer "
                                                    "dispersion relation (JSON list)");
    c_disp->add_option("--d1", d1)->required()->check(CLI::PositiveNumber);
    c_disp->add_option("--d2", d2)->required()->check(CLI::PositiveNumber);
    c_disp->add_option("--gamma1", gamma1)->required();
    c_disp->add_option("--gamma2", gamma2)->required();
    c_disp->add_option("--g", grav)->required()->check(CLI::PositiveNumber);
    c_disp->add_option("--sigma", sigma)->required()->check(CLI::NonNegativeNumber);
    c_disp->add_option("--k", k)->required()->check(CLI::PositiveNumber);

    auto* c_sym = app.add_subcommand("symbol", "interface multiplier sequence and decay table");
    c_sym->add_option("--a-p1", a_p1)->required()->check(CLI::PositiveNumber);
    c_sym->add_option("--gamma1", gamma1)->required();
    c_sym->add_option("--gamma2", gamma2)->required();
    c_sym->add_option("--theta1", theta1)->required()->check(CLI::PositiveNumber);
    c_sym->add_option("--theta2", theta2)->required()->check(CLI::PositiveNumber);
    c_sym->add_option("--k-max", k_max)->required()->check(CLI::Range(2, 100000000));
    c_sym->add_option("--out", out_dir);

    auto* c_field = app.add_subcommand("field", "first-order wave field grid and surface profile");
    c_field->add_option("--config", config_path)->required();
    c_field->add_option("--k", k)->check(CLI::PositiveNumber);
    c_field->add_option("--n", n_div)->description("period divisor; 0 = minimal")->check(CLI::NonNegativeNumber);
    c_field->add_option("--amplitude", amplitude)->required();
    c_field->add_option("--nq", nq)->check(CLI::Range(8, 10000000));
    c_field->add_option("--np", np)->check(CLI::Range(4, 10000000));
    c_field->add_option("--svg", svg_path);
    c_field->add_option("--out", out_dir);

    auto* c_val = app.add_subcommand("validate", "run the invariant suite and emit artifacts");
    c_val->add_option("--config", config_path)->required();
    c_val->add_option("--out", out_dir);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (c_disp->parsed()) {
            const std::string params = "d1=" + fmt17(d1) + " d2=" + fmt17(d2) +
                                       " gamma1=" + fmt17(gamma1) + " gamma2=" + fmt17(gamma2) +
                                       " g=" + fmt17(grav) + " sigma=" + fmt17(sigma) +
                                       " k=" + std::to_string(k);
            double roots[3];
            int count = 0;
            if (sw_dispersion_solve(d1, d2, gamma1, gamma2, grav, sigma, k, roots, &count) != SW_OK)
                numeric_failure("dispersion", params);
            std::string out = "[";
            for (int i = 0; i < count; ++i)
                out += (i ? ", " : "") + fmt17(roots[i]);
            std::cout << out << "]\n";
            return 0;
        }

        if (c_sym->parsed()) {
            const std::string params = "a_p1=" + fmt17(a_p1) + " k_max=" + std::to_string(k_max);
            const std::string hash =
                hex64(fnv1a64("symbol " + fmt17(a_p1) + " " + fmt17(gamma1) + " " + fmt17(gamma2) +
                              " " + fmt17(theta1) + " " + fmt17(theta2)));
            if (out_dir.empty()) out_dir = ".";
            Csv csv(out_path(out_dir, "symbol.csv"), "k,lambda_k,k_lambda_k,k2_diff", hash);
            double prev = 0.0;
            if (sw_multiplier_symbol(a_p1, gamma1, gamma2, theta1, theta2, 1, &prev) != SW_OK)
                numeric_failure("symbol", params);
            for (int kk = 1; kk <= k_max; ++kk) {
                double next = 0.0;
                if (sw_multiplier_symbol(a_p1, gamma1, gamma2, theta1, theta2, kk + 1, &next) !=
                    SW_OK)
                    numeric_failure("symbol", params);
                csv.row({static_cast<double>(kk), prev, kk * prev,
                         static_cast<double>(kk) * kk * (next - prev)});
                prev = next;
            }
            csv.note_written();
            return 0;
        }

        // Everything below needs a config.
        RunConfig cfg = load_config(config_path);
        if (out_dir.empty())
            out_dir = cfg.output_dir;
        Profile prof;
        open_profile(cfg, prof);

        if (c_laminar->parsed()) {
            const std::string params = "lambda=" + fmt17(lambda);
            std::vector<double> p(samples), b(samples), H(samples), g(samples), G(samples);
            if (sw_laminar_sample(prof.p, lambda, samples, p.data(), b.data(), H.data(), g.data(),
                                  G.data()) != SW_OK)
                numeric_failure("laminar", params);
            Csv csv(out_path(out_dir, "laminar.csv"), "p,b,H,gamma,Gamma", cfg.hash);
            for (int i = 0; i < samples; ++i)
                csv.row({p[i], b[i], H[i], g[i], G[i]});
            csv.note_written();
            return 0;
        }

        if (c_lambda0->parsed()) {
            double l0 = 0.0;
            if (sw_lambda0(prof.p, cfg.gravity, &l0) != SW_OK)
                numeric_failure("lambda0", "g=" + fmt17(cfg.gravity));
            std::printf("%.10f\n", l0);
            return 0;
        }

        if (c_xi->parsed()) {
            const std::string params = "lambda=" + fmt17(lambda) + " mu in [" + fmt17(mu_min) +
                                       ", " + fmt17(mu_max) + "]";
            std::vector<double> mu(samples), xiv(samples), xim(samples), xil(samples);
            if (sw_xi_scan(prof.p, cfg.gravity, cfg.surface_tension, lambda, mu_min, mu_max,
                           samples, cfg.steps_per_layer, mu.data(), xiv.data(), xim.data(),
                           xil.data()) != SW_OK)
                numeric_failure("xi", params);
            Csv csv(out_path(out_dir, "xi.csv"), "mu,xi,xi_mu,xi_lambda", cfg.hash);
            for (int i = 0; i < samples; ++i)
                csv.row({mu[i], xiv[i], xim[i], xil[i]});
            csv.note_written();
            return 0;
        }

        if (c_mu->parsed()) {
            const std::string params = "lambda_max=" + fmt17(lambda);
            std::vector<double> lam(samples), mu(samples);
            if (sw_mu_curve(prof.p, cfg.gravity, cfg.surface_tension, lambda, samples,
                            cfg.steps_per_layer, lam.data(), mu.data()) != SW_OK)
                numeric_failure("mu-curve", params);
            Csv csv(out_path(out_dir, "mu_curve.csv"), "lambda,mu", cfg.hash);
            for (int i = 0; i < samples; ++i)
                csv.row({lam[i], mu[i]});
            csv.note_written();
            return 0;
        }

        if (c_bif->parsed()) {
            Csv csv(out_path(out_dir, "bifurcation.csv"), "k,n,kn,lambda_k,at_lower_bound",
                    cfg.hash);
            for (int kk = 1; kk <= k_max; ++kk) {
                const std::string params = "k=" + std::to_string(kk);
                sw_bifurcation* bif = nullptr;
                if (sw_bifurcation_compute(prof.p, cfg.gravity, cfg.surface_tension, kk, n_div,
                                           cfg.steps_per_layer, &bif) != SW_OK)
                    numeric_failure("bifurcate", params);
                csv.row({static_cast<double>(kk),
                         static_cast<double>(sw_bifurcation_period_divisor(bif)),
                         static_cast<double>(sw_bifurcation_wavenumber(bif)),
                         sw_bifurcation_lambda(bif),
                         static_cast<double>(sw_bifurcation_at_lower_bound(bif))});
                const int count = sw_bifurcation_sample_count(bif);
                std::vector<double> p(count), v(count);
                sw_bifurcation_samples(bif, p.data(), v.data(), nullptr);
                Csv ef(out_path(out_dir, "eigenfunction_" + std::to_string(kk) + ".csv"), "p,v",
                       cfg.hash);
                for (int i = 0; i < count; ++i)
                    ef.row({p[i], v[i]});
                sw_bifurcation_free(bif);
            }
            csv.note_written();
            return 0;
        }

        if (c_field->parsed()) {
            const std::string params = "k=" + std::to_string(k) + " amplitude=" + fmt17(amplitude);
            sw_field* field = nullptr;
            if (sw_field_create(prof.p, cfg.gravity, cfg.surface_tension, k, n_div, 0.0, amplitude,
                                nq, np, cfg.steps_per_layer, &field) != SW_OK)
                numeric_failure("field", params);
            const int rows = sw_field_np(field), cols = sw_field_nq(field);
            std::vector<double> q(cols), p(rows), h(rows * cols), hp(rows * cols),
                hq(rows * cols);
            sw_field_grid(field, q.data(), p.data(), h.data(), hp.data(), hq.data());
            {
                Csv csv(out_path(out_dir, "field.csv"), "q,p,h,h_p,h_q", cfg.hash);
                for (int r = 0; r < rows; ++r)
                    for (int c = 0; c < cols; ++c)
                        csv.row({q[c], p[r], h[r * cols + c], hp[r * cols + c],
                                 hq[r * cols + c]});
                csv.note_written();
            }
            std::vector<double> eta(cols);
            sw_field_surface(field, nullptr, eta.data());
            {
                Csv csv(out_path(out_dir, "surface.csv"), "q,eta", cfg.hash);
                for (int c = 0; c < cols; ++c)
                    csv.row({q[c], eta[c]});
                csv.note_written();
            }
            if (!svg_path.empty()) {
                std::vector<std::vector<double>> curves{eta};
                const int layers = sw_profile_layer_count(prof.p);
                for (int i = 1; i < layers; ++i) {
                    std::vector<double> y(cols);
                    sw_field_interface(field, i, y.data());
                    curves.push_back(std::move(y));
                }
                write_svg(svg_path, q, curves, sw_field_depth(field));
                std::cerr << "wrote " << svg_path << "\n";
            }
            sw_field_free(field);
            return 0;
        }

        if (c_val->parsed()) {
            int failed = 0;
            const auto print_line = [](const char* line, void*) { std::puts(line); };
            if (sw_validate(prof.p, cfg.gravity, cfg.surface_tension, out_dir.c_str(),
                            cfg.hash.c_str(), cfg.steps_per_layer, print_line, nullptr,
                            &failed) != SW_OK)
                numeric_failure("validate", "config=" + config_path);
            if (failed) {
                std::cerr << failed << " check(s) failed\n";
                return 1;
            }
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << e.message << "\n";
        return kExitConfig;
    }
    return 0;
}
