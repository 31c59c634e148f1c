#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sbeauty {

/// Main-field identifiers for the bundled subject-category table.
inline constexpr const char* kMainFieldPhysics = "physics";
inline constexpr const char* kMainFieldChemistry = "chemistry";
inline constexpr const char* kMainFieldEngCompSci = "engineering_computer_science";

struct FieldEntry {
    int code = 0;
    std::string name;                     // e.g. "PHYSICS, APPLIED"
    std::vector<std::string> main_fields; // a code may belong to several
};

/// Maps integer subject-category codes to field names and main fields.
/// A bundled table ships with the library; users may override it with a
/// CSV file (`code,field_name,main_field`, one row per membership).
class FieldTable {
public:
    FieldTable() = default;
    explicit FieldTable(std::vector<FieldEntry> entries);

    const FieldEntry* find(int code) const;

    /// Field name for a code; unknown codes render as "FIELD_<code>".
    std::string name_of(int code) const;

    bool code_in_main_field(int code, std::string_view main_field) const;
    bool is_main_field(std::string_view main_field) const;

    std::vector<std::string> main_field_names() const;
    const std::vector<FieldEntry>& entries() const { return entries_; }

private:
    std::vector<FieldEntry> entries_;
    std::unordered_map<int, std::size_t> by_code_;
};

/// The built-in subject-category table.
const FieldTable& bundled_field_table();

/// Loads a user override table. Throws std::runtime_error on malformed rows.
FieldTable load_field_table(const std::string& path);

}  // namespace sbeauty
