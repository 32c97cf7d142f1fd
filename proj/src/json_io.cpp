#include "vmplace/json_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "vmplace/error.hpp"

namespace vmp {

using nlohmann::json;

namespace {

[[noreturn]] void parse_error(const std::string& what)
{
    throw Error(ErrorCode::parse, what);
}

json parse(std::string_view text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        parse_error(std::string("malformed JSON: ") + e.what());
    }
}

std::vector<ResourceVector> resource_list(const json& doc, const char* key)
{
    if (!doc.contains(key) || !doc[key].is_array())
        parse_error(std::string("expected array field \"") + key + "\"");
    std::vector<ResourceVector> out;
    for (const auto& item : doc[key]) {
        if (!item.is_object() || !item.contains("cpu") || !item.contains("mem") ||
            !item["cpu"].is_number() || !item["mem"].is_number())
            parse_error(std::string("entries of \"") + key +
                        "\" must be objects with numeric cpu and mem");
        out.push_back({item["cpu"].get<double>(), item["mem"].get<double>()});
    }
    return out;
}

json resource_array(const std::vector<ResourceVector>& list)
{
    json out = json::array();
    for (const auto& r : list)
        out.push_back({{"cpu", r.cpu}, {"mem", r.mem}});
    return out;
}

}  // namespace

std::string problem_to_json(const PlacementProblem& p)
{
    json doc;
    doc["servers"] = resource_array(p.servers());
    doc["vms"] = resource_array(p.vms());
    doc["alpha"] = p.alpha();
    doc["beta"] = p.beta();
    return doc.dump(2) + "\n";
}

PlacementProblem problem_from_json(std::string_view text)
{
    const json doc = parse(text);
    if (!doc.is_object())
        parse_error("instance must be a JSON object");
    auto servers = resource_list(doc, "servers");
    auto vms = resource_list(doc, "vms");
    double alpha = 0.5;
    double beta = 0.5;
    if (doc.contains("alpha")) {
        if (!doc["alpha"].is_number())
            parse_error("\"alpha\" must be a number");
        alpha = doc["alpha"].get<double>();
    }
    if (doc.contains("beta")) {
        if (!doc["beta"].is_number())
            parse_error("\"beta\" must be a number");
        beta = doc["beta"].get<double>();
    }
    try {
        return PlacementProblem(std::move(servers), std::move(vms), alpha, beta);
    } catch (const Error& e) {
        parse_error(std::string("invalid instance: ") + e.what());
    }
}

std::string placement_to_json(const Placement& s)
{
    json assign = json::array();
    for (auto server : s.assign)
        assign.push_back(server + 1);
    return json{{"assign", assign}}.dump() + "\n";
}

Placement placement_from_json(std::string_view text, const PlacementProblem& p)
{
    const json doc = parse(text);
    if (!doc.is_object() || !doc.contains("assign") || !doc["assign"].is_array())
        parse_error("placement must be an object with an \"assign\" array");
    Placement s;
    for (const auto& entry : doc["assign"]) {
        if (!entry.is_number_integer())
            parse_error("placement entries must be integers");
        const auto index = entry.get<long long>();
        if (index < 1 || static_cast<unsigned long long>(index) > p.num_servers())
            parse_error("placement entry " + std::to_string(index) + " outside [1, " +
                        std::to_string(p.num_servers()) + "]");
        s.assign.push_back(static_cast<std::uint32_t>(index - 1));
    }
    if (s.size() != p.num_vms())
        parse_error("placement has " + std::to_string(s.size()) + " entries, instance has " +
                    std::to_string(p.num_vms()) + " vms");
    return s;
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::io, "cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::string& path, std::string_view contents)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorCode::io, "cannot write " + path);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out)
        throw Error(ErrorCode::io, "write failed for " + path);
}

}  // namespace vmp
