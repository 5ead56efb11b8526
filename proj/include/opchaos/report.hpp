#ifndef OPCHAOS_REPORT_HPP
#define OPCHAOS_REPORT_HPP

#include <string>

#include "opchaos/classifier.hpp"

namespace opchaos {

// Config parsing. All errors are ConfigError whose message starts with the
// JSON-pointer path of the offending node. Unknown keys are rejected.

WeightSpec parse_weight_spec(const json& j, const std::string& path);
Space parse_space(const json& j, const std::string& path);
IndexSet parse_index_set(const json& j, const std::string& path);
AtomicSystem parse_system_config(const json& cfg, const std::string& path = "/system");
DCCertificate parse_certificate(const json& j, const AtomicSystem& system);

json load_json_file(const std::string& file);

json verdict_to_json(const Verdict& v);

// Deterministic serialization: insertion-ordered keys, floats with 17
// significant digits.
std::string dump_report(const json& report, int indent = 2);

void write_text_file(const std::string& file, const std::string& content);

// rows of (label, values...) with a header line
void write_csv(const std::string& file, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

} // namespace opchaos

#endif
