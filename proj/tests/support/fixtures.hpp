#pragma once

// Shared helpers for building small in-memory corpora and temp-file fixtures.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "sbeauty/corpus.hpp"

namespace fixtures {

class TempDir {
public:
    TempDir() {
        auto pattern =
            (std::filesystem::temp_directory_path() / "sbeauty_test_XXXXXX").string();
        if (!mkdtemp(pattern.data())) throw std::runtime_error("mkdtemp failed");
        path_ = pattern;
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::string& path() const { return path_; }
    std::string file(const std::string& name) const { return path_ + "/" + name; }

private:
    std::string path_;
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline sbeauty::Publication pub(std::string id, int year,
                                std::vector<std::string> authors = {"Doe, J."},
                                std::string title = "Untitled") {
    sbeauty::Publication p;
    p.id = std::move(id);
    p.year = year;
    p.title = std::move(title);
    p.authors = std::move(authors);
    return p;
}

inline sbeauty::CitationEdge edge(std::string citing, std::string cited) {
    return {std::move(citing), std::move(cited)};
}

inline sbeauty::Patent family(std::string family_id, int application_year,
                              std::vector<std::string> npl_cited_ids,
                              std::vector<std::string> inventors = {"Smith, Ann"}) {
    sbeauty::Patent fam;
    fam.family_id = std::move(family_id);
    fam.patent_ids = {fam.family_id + "-P1"};
    fam.title = "Patent " + fam.family_id;
    fam.inventors = std::move(inventors);
    fam.application_year = application_year;
    fam.npl_cited_ids = std::move(npl_cited_ids);
    return fam;
}

inline sbeauty::Corpus corpus_of(std::vector<sbeauty::Publication> pubs,
                                 std::vector<sbeauty::CitationEdge> edges = {},
                                 std::vector<sbeauty::Patent> patents = {},
                                 bool enforce = true) {
    sbeauty::BuildOptions options;
    options.enforce = enforce;
    options.strict = false;
    return sbeauty::Corpus::build(std::move(pubs), std::move(edges), std::move(patents),
                                  options);
}

// A publication plus `count` citers in `year`, appended to the given lists.
// Citer author names are generated disjoint from everything else.
inline void add_citers(std::vector<sbeauty::Publication>& pubs,
                       std::vector<sbeauty::CitationEdge>& edges, const std::string& cited,
                       int year, int count, const std::string& id_prefix) {
    for (int i = 0; i < count; ++i) {
        const std::string id =
            id_prefix + "_" + std::to_string(year) + "_" + std::to_string(i);
        pubs.push_back(pub(id, year, {"Citer" + id + ", Q."}));
        edges.push_back(edge(id, cited));
    }
}

}  // namespace fixtures
