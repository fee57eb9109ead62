#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "rotgraph/classifier.hpp"
#include "rotgraph/curve.hpp"
#include "rotgraph/fine_graph.hpp"
#include "rotgraph/rotation_set.hpp"

namespace rotgraph {

inline constexpr const char* kToolVersion = "rotgraph 0.1.0";

// Curve files: one lifted vertex per line as "p/q r/s", the chain closed by repeating the
// first vertex shifted by the class, then "# class a b".
std::string format_curve(const PLCurve& c);
PLCurve parse_curve(const std::string& text);
PLCurve read_curve_file(const std::filesystem::path& path);
void write_curve_file(const std::filesystem::path& path, const PLCurve& c);

std::string hull_csv(const ConvexRegion& hull);
ConvexRegion parse_hull_csv(const std::string& text);

struct SvgOptions {
  std::vector<Vec2> cloud;
  std::string title;
};
std::string hull_svg(const ConvexRegion& hull, const SvgOptions& opts = {});

nlohmann::json thresholds_to_json(const ShapeThresholds& th);
// Missing keys keep the given base values; non-positive values throw Input.
ShapeThresholds thresholds_from_json(const nlohmann::json& j, ShapeThresholds base = {});

nlohmann::json vec_json(Vec2 v);
nlohmann::json hull_json(const ConvexRegion& hull);
nlohmann::json estimate_to_json(const RotSetEstimate& e);
nlohmann::json interval_to_json(const RotInterval& r);
nlohmann::json cross_check_to_json(const CrossCheck& c);
nlohmann::json report_to_json(const ClassificationReport& r);
nlohmann::json translation_length_to_json(const TranslationLengthBounds& b);

// Writes curve files <stem>_<i>.curve next to the returned JSON's intended location.
nlohmann::json write_certificate(const std::filesystem::path& dir, const std::string& stem,
                                 const CertifiedPath& path);
nlohmann::json distance_to_json(const DistanceBounds& d, const nlohmann::json& certificate);

struct CertificateCheck {
  PathCheck check;
  std::size_t curves = 0;
  // Recorded per-step intersection counts that disagree with recomputation.
  std::vector<std::size_t> mismatched_steps;
  bool valid() const { return check.valid && mismatched_steps.empty(); }
};
// Re-validates a certificate JSON (a distance output or bare certificate) from files alone.
CertificateCheck verify_certificate_file(const std::filesystem::path& path);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace rotgraph
