#ifndef KINKLAB_CONFIG_HPP
#define KINKLAB_CONFIG_HPP

#include "kinklab/grid.hpp"
#include "kinklab/model.hpp"

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace kinklab {

inline constexpr const char* kToolVersion = "kinklab 1.0.0";

// Flat `key = value` configuration with dotted keys, '#' comments, no
// nesting. Unknown keys are rejected so typos cannot silently change runs.
class RunConfig {
  public:
    RunConfig();
    static RunConfig from_file(const std::string& path);

    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const;
    std::string get(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_list(const std::string& key, const std::vector<double>& fallback) const;

    Grid make_grid() const;
    PotentialModel make_model() const;

    // Sorted key = value lines, echoed into every artifact header.
    std::vector<std::string> echo() const;

  private:
    std::map<std::string, std::string> values_;
};

struct CsvTable {
    std::vector<std::string> header_comments;  // without the leading '#'
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// Deterministic CSV: '#'-prefixed header (tool version, config echo,
// provenance), column-name line, then rows at 17 significant digits.
std::string csv_format(const CsvTable& table);
void csv_write(const std::string& path, const CsvTable& table);
CsvTable csv_read(const std::string& path);

struct SvgCurve {
    std::string label;
    std::vector<double> x, y;
};

// Static line plot with axes and a legend; values mirror the CSV exactly.
std::string svg_format(const std::vector<SvgCurve>& curves, const std::string& title);
void svg_write(const std::string& path, const std::vector<SvgCurve>& curves, const std::string& title);

namespace cli {

// Executes one subcommand against the configuration. Returns the process
// exit code: 0 pass, 1 a checked hypothesis fails, 2 invalid input,
// 3 numerical failure.
int run(const std::string& command, const RunConfig& cfg, std::ostream& out, std::ostream& err);

} // namespace cli

} // namespace kinklab

#endif
