#include "sbeauty/field_table.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "detail/textnorm.hpp"

namespace sbeauty {

FieldTable::FieldTable(std::vector<FieldEntry> entries) : entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(),
              [](const FieldEntry& a, const FieldEntry& b) { return a.code < b.code; });
    for (std::size_t i = 0; i < entries_.size(); ++i) by_code_[entries_[i].code] = i;
}

const FieldEntry* FieldTable::find(int code) const {
    const auto it = by_code_.find(code);
    return it == by_code_.end() ? nullptr : &entries_[it->second];
}

std::string FieldTable::name_of(int code) const {
    if (const FieldEntry* e = find(code)) return e->name;
    return "FIELD_" + std::to_string(code);
}

bool FieldTable::code_in_main_field(int code, std::string_view main_field) const {
    const FieldEntry* e = find(code);
    if (!e) return false;
    return std::find(e->main_fields.begin(), e->main_fields.end(), main_field) !=
           e->main_fields.end();
}

bool FieldTable::is_main_field(std::string_view main_field) const {
    for (const auto& e : entries_)
        for (const auto& m : e.main_fields)
            if (m == main_field) return true;
    return false;
}

std::vector<std::string> FieldTable::main_field_names() const {
    std::set<std::string> names;
    for (const auto& e : entries_)
        for (const auto& m : e.main_fields) names.insert(m);
    return {names.begin(), names.end()};
}

namespace {

struct RawRow {
    int code;
    const char* name;
};

constexpr RawRow kPhysics[] = {
    {1, "ACOUSTICS"},
    {20, "ASTRONOMY & ASTROPHYSICS"},
    {27, "BIOPHYSICS"},
    {35, "THERMODYNAMICS"},
    {152, "MATERIALS SCIENCE, BIOMATERIALS"},
    {153, "MATERIALS SCIENCE, CHARACTERIZATION & TESTING"},
    {154, "MATERIALS SCIENCE, COATINGS & FILMS"},
    {155, "MATERIALS SCIENCE, COMPOSITES"},
    {156, "MATERIALS SCIENCE, TEXTILES"},
    {159, "METEOROLOGY & ATMOSPHERIC SCIENCES"},
    {168, "NUCLEAR SCIENCE & TECHNOLOGY"},
    {175, "OPTICS"},
    {185, "PHYSICS, APPLIED"},
    {187, "PHYSICS, FLUIDS & PLASMAS"},
    {188, "PHYSICS, ATOMIC, MOLECULAR & CHEMICAL"},
    {189, "PHYSICS, MULTIDISCIPLINARY"},
    {190, "PHYSICS, CONDENSED MATTER"},
    {192, "PHYSICS, NUCLEAR"},
    {193, "PHYSICS, PARTICLES & FIELDS"},
    {195, "PHYSICS, MATHEMATICAL"},
};

constexpr RawRow kChemistry[] = {
    {23, "BIOCHEMICAL RESEARCH METHODS"},
    {24, "BIOCHEMISTRY & MOLECULAR BIOLOGY"},
    {36, "CHEMISTRY, APPLIED"},
    {37, "CHEMISTRY, MEDICINAL"},
    {38, "CHEMISTRY, MULTIDISCIPLINARY"},
    {39, "CHEMISTRY, ANALYTICAL"},
    {40, "CHEMISTRY, INORGANIC & NUCLEAR"},
    {41, "CHEMISTRY, ORGANIC"},
    {42, "CHEMISTRY, PHYSICAL"},
    {57, "CRYSTALLOGRAPHY"},
    {63, "GEOCHEMISTRY & GEOPHYSICS"},
    {71, "ELECTROCHEMISTRY"},
    {198, "POLYMER SCIENCE"},
};

constexpr RawRow kEngCompSci[] = {
    {6, "ENGINEERING, AEROSPACE"},
    {28, "BIOTECHNOLOGY & APPLIED MICROBIOLOGY"},
    {44, "COMPUTER SCIENCE, ARTIFICIAL INTELLIGENCE"},
    {46, "COMPUTER SCIENCE, CYBERNETICS"},
    {47, "COMPUTER SCIENCE, HARDWARE & ARCHITECTURE"},
    {48, "COMPUTER SCIENCE, INFORMATION SYSTEMS"},
    {49, "COMMUNICATION"},
    {50, "COMPUTER SCIENCE, INTERDISC APPLICATIONS"},
    {51, "COMPUTER SCIENCE, SOFTWARE ENGINEERING"},
    {52, "COMPUTER SCIENCE, THEORY & METHODS"},
    {54, "CONSTRUCTION & BUILDING TECHNOLOGY"},
    {75, "ENERGY & FUELS"},
    {76, "ENGINEERING, MULTIDISCIPLINARY"},
    {77, "ENGINEERING, BIOMEDICAL"},
    {78, "ENGINEERING, ENVIRONMENTAL"},
    {79, "ENGINEERING, CHEMICAL"},
    {80, "ENGINEERING, INDUSTRIAL"},
    {81, "ENGINEERING, MANUFACTURING"},
    {82, "ENGINEERING, MARINE"},
    {83, "ENGINEERING, CIVIL"},
    {84, "ENGINEERING, OCEAN"},
    {85, "ENGINEERING, PETROLEUM"},
    {86, "ENGINEERING, ELECTRICAL & ELECTRONIC"},
    {87, "ENGINEERING, MECHANICAL"},
    {97, "FOOD SCIENCE & TECHNOLOGY"},
    {119, "INSTRUMENTS & INSTRUMENTATION"},
    {131, "OPERATIONS RESEARCH & MANAGEMENT SCIENCE"},
    {145, "MEDICAL LABORATORY TECHNOLOGY"},
    {147, "METALLURGY & METALLURGICAL ENGINEERING"},
    {168, "NUCLEAR SCIENCE & TECHNOLOGY"},
    {173, "REMOTE SENSING"},
    {186, "IMAGING SCIENCE & PHOTOGRAPHIC TECHNOLOGY"},
    {222, "TELECOMMUNICATIONS"},
    {227, "TRANSPORTATION"},
    {237, "MINING & MINERAL PROCESSING"},
    {242, "TRANSPORTATION SCIENCE & TECHNOLOGY"},
    {244, "AGRICULTURAL ENGINEERING"},
    {245, "CRITICAL CARE MEDICINE"},
    {247, "ENGINEERING, GEOLOGICAL"},
    {248, "INTEGRATIVE & COMPLEMENTARY MEDICINE"},
    {251, "ROBOTICS"},
    {252, "NANOSCIENCE & NANOTECHNOLOGY"},
    {257, "CELL & TISSUE ENGINEERING"},
};

FieldTable build_bundled() {
    std::unordered_map<int, FieldEntry> merged;
    const auto add = [&merged](const RawRow* rows, std::size_t n, const char* main) {
        for (std::size_t i = 0; i < n; ++i) {
            FieldEntry& e = merged[rows[i].code];
            e.code = rows[i].code;
            e.name = rows[i].name;
            e.main_fields.push_back(main);
        }
    };
    add(kPhysics, std::size(kPhysics), kMainFieldPhysics);
    add(kChemistry, std::size(kChemistry), kMainFieldChemistry);
    add(kEngCompSci, std::size(kEngCompSci), kMainFieldEngCompSci);

    std::vector<FieldEntry> entries;
    entries.reserve(merged.size());
    for (auto& [code, e] : merged) entries.push_back(std::move(e));
    return FieldTable(std::move(entries));
}

}  // namespace

const FieldTable& bundled_field_table() {
    static const FieldTable table = build_bundled();
    return table;
}

FieldTable load_field_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open field table " + path);

    std::unordered_map<int, FieldEntry> merged;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1 && line.rfind("code,", 0) == 0) continue;  // header

        const auto c1 = line.find(',');
        const auto c2 = line.rfind(',');
        if (c1 == std::string::npos || c2 == c1)
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": expected code,field_name,main_field");
        int code = 0;
        try {
            code = std::stoi(line.substr(0, c1));
        } catch (const std::exception&) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": bad field code");
        }
        const std::string name = line.substr(c1 + 1, c2 - c1 - 1);
        const std::string main = detail::fold_to_ascii_lower(line.substr(c2 + 1));
        if (name.empty() || main.empty())
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": empty field name or main field");
        FieldEntry& e = merged[code];
        e.code = code;
        e.name = name;
        if (std::find(e.main_fields.begin(), e.main_fields.end(), main) ==
            e.main_fields.end())
            e.main_fields.push_back(main);
    }
    std::vector<FieldEntry> entries;
    entries.reserve(merged.size());
    for (auto& [code, e] : merged) entries.push_back(std::move(e));
    return FieldTable(std::move(entries));
}

}  // namespace sbeauty
