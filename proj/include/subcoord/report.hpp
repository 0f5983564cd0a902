#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "rational.hpp"

namespace subcoord {

enum class Status { pass, fail, refused, error };

inline const char* status_name(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::refused: return "refused";
        case Status::error: return "error";
    }
    return "error";
}

/// Exit code of a command: 0 pass, 1 fail, 2 input error, 3 refused.
inline int exit_code(Status s) {
    switch (s) {
        case Status::pass: return 0;
        case Status::fail: return 1;
        case Status::error: return 2;
        case Status::refused: return 3;
    }
    return 2;
}

/// Command output. Values are integers, booleans, strings, or exact rationals
/// stored as "num/den" strings; nothing is ever a floating point number.
struct Report {
    using Json = nlohmann::ordered_json;

    std::string command;
    Status status = Status::pass;
    std::string message;
    Json rows = Json::object();
    std::vector<std::string> witnesses;

    static Json value(const Rational& r) { return to_string(r); }
    static Json value(const Vector& v) { return v.to_string(); }
    static Json value(const std::vector<Vector>& vs) {
        Json a = Json::array();
        for (const Vector& v : vs) a.push_back(v.to_string());
        return a;
    }
    template <class T>
    static Json value(const T& v) {
        return Json(v);
    }

    template <class T>
    Report& set(const std::string& key, const T& v) {
        rows[key] = value(v);
        return *this;
    }

    /// Downgrades pass to fail; refusal and error are kept.
    void fail_if(bool condition) {
        if (condition && status == Status::pass) status = Status::fail;
    }

    std::string json() const {
        Json j = Json::object();
        j["command"] = command;
        j["status"] = status_name(status);
        if (!message.empty()) j["message"] = message;
        j["rows"] = rows;
        j["witnesses"] = witnesses;
        return j.dump(2) + "\n";
    }

    std::string text() const {
        std::string out = "command: " + command + "\nstatus: " + status_name(status) + "\n";
        if (!message.empty()) out += "message: " + message + "\n";
        flatten(rows, "", out);
        for (const std::string& w : witnesses) out += "witness: " + w + "\n";
        return out;
    }

private:
    static std::string scalar(const Json& v) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_array()) {
            std::string s;
            for (const Json& e : v) s += (s.empty() ? "" : " ") + scalar(e);
            return s.empty() ? "-" : s;
        }
        return v.dump();
    }
    static void flatten(const Json& node, const std::string& prefix, std::string& out) {
        for (const auto& [k, v] : node.items()) {
            const std::string key = prefix.empty() ? k : prefix + "." + k;
            if (v.is_object()) flatten(v, key, out);
            else out += key + ": " + scalar(v) + "\n";
        }
    }
};

}  // namespace subcoord
