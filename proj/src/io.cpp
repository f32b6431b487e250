#include "darksol/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace darksol {

Nonlinearity nonlinearity_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw ConfigError("nonlinearity spec needs a \"kind\" field");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "gp") return Nonlinearity::gross_pitaevskii();
    if (kind == "poly_1mr") {
        if (!j.contains("coeffs")) throw ConfigError("poly_1mr needs \"coeffs\"");
        return Nonlinearity::polynomial(j.at("coeffs").get<std::vector<double>>());
    }
    throw ConfigError("unknown nonlinearity kind: " + kind);
}

json nonlinearity_to_json(const Nonlinearity& nl) {
    if (nl.kind() == NonlinearityKind::GrossPitaevskii) return json{{"kind", "gp"}};
    return json{{"kind", "poly_1mr"}, {"coeffs", nl.coeffs()}};
}

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path) : path_(path) {
    require_writable_parent(path);
}

void CsvWriter::header(const std::vector<std::string>& cols) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += cols[i];
    }
    buffer_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += format_g17(values[i]);
    }
    buffer_ += '\n';
}

void CsvWriter::flush() {
    std::ofstream out(path_);
    if (!out) throw ConfigError("cannot open " + path_ + " for writing");
    out << buffer_;
}

void write_field_csv(const std::string& path, const HydroField& f) {
    CsvWriter w(path);
    w.header({"x", "eta", "v"});
    for (int j = 0; j < f.grid.n; ++j)
        w.row({f.grid.node(j), f.eta[j], f.v[j]});
    w.flush();
}

HydroField read_field_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    std::string line;
    std::getline(in, line);  // header
    std::vector<double> xs, etas, vs;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string tok;
        double vals[3];
        for (int i = 0; i < 3; ++i) {
            if (!std::getline(ss, tok, ',')) throw ConfigError("bad field CSV row");
            vals[i] = std::stod(tok);
        }
        xs.push_back(vals[0]);
        etas.push_back(vals[1]);
        vs.push_back(vals[2]);
    }
    const int n = static_cast<int>(xs.size());
    if (n < 16) throw ConfigError("field CSV too short");
    const double dx = xs[1] - xs[0];
    Grid g(n, dx * n);
    HydroField f(g);
    f.eta = etas;
    f.v = vs;
    return f;
}

std::vector<std::string> diagnostics_columns(int n_solitons) {
    std::vector<std::string> cols{"t", "E", "p"};
    for (int k = 1; k <= n_solitons; ++k) cols.push_back("p_tilde_" + std::to_string(k));
    cols.push_back("G");
    cols.push_back("eps_xnorm");
    for (int k = 1; k <= n_solitons; ++k) cols.push_back("c_" + std::to_string(k));
    for (int k = 1; k <= n_solitons; ++k) cols.push_back("a_" + std::to_string(k));
    cols.push_back("max_eta");
    cols.push_back("residual");
    return cols;
}

std::vector<double> diagnostics_values(const DiagnosticsRecord& rec, int n_solitons) {
    std::vector<double> vals{rec.t, rec.E, rec.p};
    for (int k = 0; k < n_solitons; ++k)
        vals.push_back(k < static_cast<int>(rec.p_tilde.size()) ? rec.p_tilde[k] : 0.0);
    vals.push_back(rec.G);
    vals.push_back(rec.eps_xnorm);
    for (int k = 0; k < n_solitons; ++k)
        vals.push_back(k < static_cast<int>(rec.c.size()) ? rec.c[k] : 0.0);
    for (int k = 0; k < n_solitons; ++k)
        vals.push_back(k < static_cast<int>(rec.a.size()) ? rec.a[k] : 0.0);
    vals.push_back(rec.max_eta);
    vals.push_back(rec.residual);
    return vals;
}

void write_json_file(const std::string& path, const json& j) {
    require_writable_parent(path);
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    out << j.dump(2) << '\n';
}

void require_writable_parent(const std::string& path) {
    const std::filesystem::path p(path);
    const auto parent = p.parent_path();
    if (!parent.empty() && !std::filesystem::exists(parent))
        throw ConfigError("output directory does not exist: " + parent.string());
}

}  // namespace darksol
