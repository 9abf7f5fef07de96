#ifndef SYZLAB_REPORT_HPP
#define SYZLAB_REPORT_HPP

#include <json.hpp>

#include "syzlab/koszul.hpp"
#include "syzlab/theorems.hpp"

namespace syzlab {

inline constexpr const char* kReportSchemaVersion = "1";

nlohmann::json point_to_json(const CurvePoint& pt);
nlohmann::json divisor_to_json(const EffectiveDivisor& xi);

nlohmann::json to_json(const BettiTable& t);
nlohmann::json to_json(const GonalityReport& r);
nlohmann::json to_json(const PvaReport& r);
nlohmann::json to_json(const TheoremBReport& r);
nlohmann::json to_json(const GrowthReport& r);
nlohmann::json to_json(const DualityReport& r);

// format is "json", "text" or "csv"; report is the full experiment document
std::string emit_report(const nlohmann::json& report, const std::string& format);

}  // namespace syzlab

#endif
