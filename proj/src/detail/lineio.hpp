#pragma once

#include <cstdio>
#include <cstring>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sbeauty::detail {

// Buffered line reader built on stdio; fast enough for the 10M-line
// citation files without pulling in a parsing dependency.
class LineReader {
public:
    explicit LineReader(const std::string& path) : path_(path) {
        file_ = std::fopen(path.c_str(), "rb");
        if (!file_) throw std::runtime_error("cannot open " + path);
        buf_.resize(1 << 20);
    }
    ~LineReader() {
        if (file_) std::fclose(file_);
    }
    LineReader(const LineReader&) = delete;
    LineReader& operator=(const LineReader&) = delete;

    // Returns false at EOF. The returned view is valid until the next call.
    bool next(std::string_view& line) {
        line_.clear();
        for (;;) {
            if (pos_ >= len_) {
                len_ = std::fread(buf_.data(), 1, buf_.size(), file_);
                pos_ = 0;
                if (len_ == 0) {
                    if (line_.empty() && !pending_) return false;
                    pending_ = false;
                    line = strip_cr(line_);
                    ++line_no_;
                    return true;
                }
            }
            const char* start = buf_.data() + pos_;
            const char* nl = static_cast<const char*>(
                memchr(start, '\n', len_ - pos_));
            if (nl) {
                line_.append(start, nl - start);
                pos_ = static_cast<std::size_t>(nl - buf_.data()) + 1;
                pending_ = false;
                line = strip_cr(line_);
                ++line_no_;
                return true;
            }
            line_.append(start, len_ - pos_);
            pos_ = len_;
            pending_ = true;
        }
    }

    std::size_t line_number() const { return line_no_; }
    const std::string& path() const { return path_; }

private:
    static std::string_view strip_cr(std::string_view s) {
        if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
        return s;
    }

    std::string path_;
    std::FILE* file_ = nullptr;
    std::string buf_;
    std::string line_;
    std::size_t pos_ = 0;
    std::size_t len_ = 0;
    std::size_t line_no_ = 0;
    bool pending_ = false;
};

// Buffered writer; flushes in 1 MiB chunks.
class BufferedWriter {
public:
    explicit BufferedWriter(const std::string& path) : path_(path) {
        file_ = std::fopen(path.c_str(), "wb");
        if (!file_) throw std::runtime_error("cannot open " + path + " for writing");
        buf_.reserve(1 << 20);
    }
    ~BufferedWriter() { close(); }
    BufferedWriter(const BufferedWriter&) = delete;
    BufferedWriter& operator=(const BufferedWriter&) = delete;

    void write(std::string_view s) {
        buf_.append(s);
        if (buf_.size() >= (1 << 20)) flush();
    }

    void close() {
        if (!file_) return;
        flush();
        std::fclose(file_);
        file_ = nullptr;
    }

private:
    void flush() {
        if (!buf_.empty()) {
            if (std::fwrite(buf_.data(), 1, buf_.size(), file_) != buf_.size())
                throw std::runtime_error("short write to " + path_);
            buf_.clear();
        }
    }

    std::string path_;
    std::FILE* file_ = nullptr;
    std::string buf_;
};

}  // namespace sbeauty::detail
