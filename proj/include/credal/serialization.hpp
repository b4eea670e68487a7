#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "credal/convergence.hpp"
#include "credal/core_model.hpp"
#include "credal/extended_real.hpp"

namespace credal {

/// On-disk credal set description:
///
///   {
///     "name": "optional",
///     "space": {"labels": [...], "metric": [[...], ...]},
///     "vertices": [[...], ...]
///   }
struct Instance {
  std::optional<std::string> name;
  CredalSet set;
};

/// Throws ParseError with a message anchored at the offending field, e.g.
/// "p.json: vertices[1][0]: weight must be a number".
Instance parse_instance(std::string_view text, std::string_view source = "<input>");

/// Reads and parses a file; unreadable files are a ParseError too.
Instance load_instance(const std::filesystem::path& path);

/// Canonical pretty form. parse_instance(serialize_instance(x)) reproduces x
/// and serializing again gives the same bytes.
std::string serialize_instance(const Instance& instance);

/// %.17g, or "+inf".
std::string format_real(double x);
std::string format_real(ExtendedReal x);

/// Minimal streaming JSON writer with deterministic layout. Doubles use
/// format_real; infinities become the string "+inf".
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  /// Compact arrays keep all elements on one line.
  JsonWriter& begin_array(bool compact = false);
  JsonWriter& end_array();
  JsonWriter& key(std::string_view name);

  JsonWriter& value(double x);
  JsonWriter& value(ExtendedReal x);
  JsonWriter& value(std::string_view s);
  JsonWriter& value(const char* s) { return value(std::string_view(s)); }
  JsonWriter& value(bool b);
  JsonWriter& value(std::uint64_t n);
  JsonWriter& value(int n);
  JsonWriter& null();

  template <class T>
  JsonWriter& field(std::string_view name, const T& x) {
    key(name);
    return value(x);
  }

  /// Finished document followed by a newline.
  std::string str() const { return out_ + "\n"; }

 private:
  struct Frame {
    bool object;
    bool compact;
    std::size_t count;
  };

  void before_value();
  void newline();
  void raw(std::string_view text);

  std::string out_;
  std::vector<Frame> stack_;
  bool pending_key_ = false;
};

std::string quote_json(std::string_view s);

inline constexpr std::string_view kConvergenceCsvHeader =
    "step,kl_bar,gjs,gtv,gw1,weak_gap,pinsker_slack,js_quarter_slack,weak_lipschitz_slack,"
    "w1_diameter_slack";

/// Header plus one row per record; absent values are empty cells.
std::string convergence_csv(const std::vector<ConvergenceRecord>& records);

}  // namespace credal
