#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace billiards {

/// Minimal ordered JSON value for reports. Keys keep insertion order and all
/// floating-point numbers are printed with exactly 17 significant digits, so a
/// report built from the same numbers is byte-identical every time.
class Json {
public:
    Json() : kind_(Kind::Null) {}
    Json(double v) : kind_(Kind::Double), num_(v) {}
    Json(int v) : kind_(Kind::Int), int_(v) {}
    Json(std::int64_t v) : kind_(Kind::Int), int_(v) {}
    Json(std::uint64_t v) : kind_(Kind::Int), int_(static_cast<std::int64_t>(v)) {}
    Json(bool v) : kind_(Kind::Bool), bool_(v) {}
    Json(const char* s) : kind_(Kind::String), str_(s) {}
    Json(std::string s) : kind_(Kind::String), str_(std::move(s)) {}

    static Json object();
    static Json array();

    /// Appends a key to an object (asserts object kind).
    Json& set(const std::string& key, Json value);

    /// Appends an element to an array.
    Json& push(Json value);

    std::string dump(int indent = 2) const;

private:
    enum class Kind { Null, Bool, Int, Double, String, Object, Array };

    void dump_to(std::string& out, int indent, int depth) const;

    Kind kind_;
    double num_ = 0.0;
    std::int64_t int_ = 0;
    bool bool_ = false;
    std::string str_;
    std::vector<std::pair<std::string, Json>> members_;
    std::vector<Json> elements_;
};

/// %.17g formatting used for every float in reports and data files.
std::string format_double(double v);

}  // namespace billiards
