#include "motorlint/config.hpp"

#include <fstream>
#include <sstream>

#include "motorlint/errors.hpp"

namespace motorlint {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

int to_int(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const int out = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw InvalidParams("config key " + key + " expects an integer, got \"" + v + "\"");
    }
}

double to_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const double out = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw InvalidParams("config key " + key + " expects a number, got \"" + v + "\"");
    }
}

}  // namespace

void ToolConfig::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0)) throw InvalidParams(std::string(name) + " must be positive");
    };
    positive(touch_target_min, "touch_target_min");
    positive(icon_gap_min, "icon_gap_min");
    if (crop_pad < 0) throw InvalidParams("crop_pad must be >= 0");
    if (!(similarity_min >= 0.0 && similarity_min <= 1.0))
        throw InvalidParams("similarity_min must be in [0,1]");
    if (!(section_area_min > 0.0 && section_area_min < section_area_max &&
          section_area_max <= 1.0))
        throw InvalidParams("section area bounds must satisfy 0 < min < max <= 1");
    if (!(ncc_min > 0.0 && ncc_min <= 1.0)) throw InvalidParams("ncc_min must be in (0,1]");
    if (persist_loc_tolerance < 0) throw InvalidParams("persist_loc_tolerance must be >= 0");
    positive(vb_tolerance, "vb_tolerance");
    positive(vb_min_component_area, "vb_min_component_area");
    if (text_extractor != "none")
        throw InvalidParams("unknown text_extractor \"" + text_extractor + "\"");
}

ToolConfig ToolConfig::parse(const std::string& text) {
    ToolConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidParams("config line " + std::to_string(lineno) +
                                " is not of the form key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "touch_target_min") cfg.touch_target_min = to_int(key, value);
        else if (key == "icon_gap_min") cfg.icon_gap_min = to_double(key, value);
        else if (key == "crop_pad") cfg.crop_pad = to_int(key, value);
        else if (key == "similarity_min") cfg.similarity_min = to_double(key, value);
        else if (key == "section_area_min") cfg.section_area_min = to_double(key, value);
        else if (key == "section_area_max") cfg.section_area_max = to_double(key, value);
        else if (key == "ncc_min") cfg.ncc_min = to_double(key, value);
        else if (key == "persist_loc_tolerance") cfg.persist_loc_tolerance = to_int(key, value);
        else if (key == "vb_tolerance") cfg.vb_tolerance = to_int(key, value);
        else if (key == "vb_min_component_area") cfg.vb_min_component_area = to_int(key, value);
        else if (key == "lexicon_path") cfg.lexicon_path = value;
        else if (key == "templates_dir") cfg.templates_dir = value;
        else if (key == "text_extractor") cfg.text_extractor = value;
        else if (key == "seed") cfg.seed = static_cast<std::uint32_t>(to_int(key, value));
        else throw InvalidParams("unknown config key \"" + key + "\"");
    }
    cfg.validate();
    return cfg;
}

ToolConfig ToolConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::string ToolConfig::serialize() const {
    std::ostringstream out;
    auto num = [](double v) {
        std::ostringstream s;
        s << v;
        return s.str();
    };
    out << "touch_target_min = " << touch_target_min << "\n";
    out << "icon_gap_min = " << num(icon_gap_min) << "\n";
    out << "crop_pad = " << crop_pad << "\n";
    out << "similarity_min = " << num(similarity_min) << "\n";
    out << "section_area_min = " << num(section_area_min) << "\n";
    out << "section_area_max = " << num(section_area_max) << "\n";
    out << "ncc_min = " << num(ncc_min) << "\n";
    out << "persist_loc_tolerance = " << persist_loc_tolerance << "\n";
    out << "vb_tolerance = " << vb_tolerance << "\n";
    out << "vb_min_component_area = " << vb_min_component_area << "\n";
    out << "lexicon_path = " << lexicon_path << "\n";
    out << "templates_dir = " << templates_dir << "\n";
    out << "text_extractor = " << text_extractor << "\n";
    out << "seed = " << seed << "\n";
    return out.str();
}

}  // namespace motorlint
