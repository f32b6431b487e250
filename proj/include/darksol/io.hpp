#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "darksol/diagnostics.hpp"
#include "darksol/field.hpp"
#include "darksol/nonlinearity.hpp"

namespace darksol {

using json = nlohmann::json;

/// {"kind":"gp"} or {"kind":"poly_1mr","coeffs":[b1,b2,...]}.
Nonlinearity nonlinearity_from_json(const json& j);
json nonlinearity_to_json(const Nonlinearity& nl);

/// CSV with a header row and fixed 17-significant-digit formatting so the
/// values round-trip losslessly.
class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path);
    void header(const std::vector<std::string>& cols);
    void row(const std::vector<double>& values);
    void flush();

  private:
    std::string path_;
    std::string buffer_;
};

std::string format_g17(double v);

/// Field dump with columns x, eta, v.
void write_field_csv(const std::string& path, const HydroField& f);
HydroField read_field_csv(const std::string& path);

std::vector<std::string> diagnostics_columns(int n_solitons);
std::vector<double> diagnostics_values(const DiagnosticsRecord& rec, int n_solitons);

void write_json_file(const std::string& path, const json& j);

/// Throws ConfigError when the parent directory of path does not exist.
void require_writable_parent(const std::string& path);

}  // namespace darksol
