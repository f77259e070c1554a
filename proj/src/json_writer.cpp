#include "billiards/json_writer.hpp"

#include <cassert>
#include <cmath>
#include <cstdio>

namespace billiards {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Json Json::object() {
    Json j;
    j.kind_ = Kind::Object;
    return j;
}

Json Json::array() {
    Json j;
    j.kind_ = Kind::Array;
    return j;
}

Json& Json::set(const std::string& key, Json value) {
    assert(kind_ == Kind::Object);
    members_.emplace_back(key, std::move(value));
    return *this;
}

Json& Json::push(Json value) {
    assert(kind_ == Kind::Array);
    elements_.push_back(std::move(value));
    return *this;
}

namespace {

void append_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
}

void indent_to(std::string& out, int indent, int depth) {
    if (indent > 0) out.append(std::size_t(indent) * depth, ' ');
}

}  // namespace

void Json::dump_to(std::string& out, int indent, int depth) const {
    const char* nl = indent > 0 ? "\n" : "";
    switch (kind_) {
        case Kind::Null: out += "null"; break;
        case Kind::Bool: out += bool_ ? "true" : "false"; break;
        case Kind::Int: out += std::to_string(int_); break;
        case Kind::Double:
            if (std::isfinite(num_)) out += format_double(num_);
            else out += "null";
            break;
        case Kind::String: append_escaped(out, str_); break;
        case Kind::Object: {
            if (members_.empty()) { out += "{}"; break; }
            out += '{';
            out += nl;
            for (std::size_t i = 0; i < members_.size(); ++i) {
                indent_to(out, indent, depth + 1);
                append_escaped(out, members_[i].first);
                out += indent > 0 ? ": " : ":";
                members_[i].second.dump_to(out, indent, depth + 1);
                if (i + 1 < members_.size()) out += ',';
                out += nl;
            }
            indent_to(out, indent, depth);
            out += '}';
            break;
        }
        case Kind::Array: {
            if (elements_.empty()) { out += "[]"; break; }
            out += '[';
            out += nl;
            for (std::size_t i = 0; i < elements_.size(); ++i) {
                indent_to(out, indent, depth + 1);
                elements_[i].dump_to(out, indent, depth + 1);
                if (i + 1 < elements_.size()) out += ',';
                out += nl;
            }
            indent_to(out, indent, depth);
            out += ']';
            break;
        }
    }
}

std::string Json::dump(int indent) const {
    std::string out;
    dump_to(out, indent, 0);
    if (indent > 0) out += '\n';
    return out;
}

}  // namespace billiards
