#pragma once

// Judgment ingestion: RTF stripping, newline normalization, content-hash ids
// and the corpus.jsonl store.

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "courtnet/error.hpp"
#include "courtnet/parallel.hpp"
#include "courtnet/text.hpp"

namespace courtnet {

struct Document {
  std::string doc_id;
  std::string jurisdiction;
  std::string text;
  std::string source_path;

  bool operator==(const Document&) const = default;
};

namespace rtf {

namespace detail {

// Windows-1252 bytes 0x80..0x9F; everything else maps to Latin-1.
inline char32_t cp1252(unsigned char b) {
  static constexpr char32_t kHigh[32] = {
      0x20AC, 0xFFFD, 0x201A, 0x0192, 0x201E, 0x2026, 0x2020, 0x2021, 0x02C6, 0x2030, 0x0160,
      0x2039, 0x0152, 0xFFFD, 0x017D, 0xFFFD, 0xFFFD, 0x2018, 0x2019, 0x201C, 0x201D, 0x2022,
      0x2013, 0x2014, 0x02DC, 0x2122, 0x0161, 0x203A, 0x0153, 0xFFFD, 0x017E, 0x0178};
  if (b >= 0x80 && b <= 0x9F) return kHigh[b - 0x80];
  return b;
}

inline bool is_destination(std::string_view word) {
  static constexpr std::string_view kDestinations[] = {
      "fonttbl",  "colortbl", "stylesheet", "info",       "pict",     "header",  "headerl",
      "headerr",  "headerf",  "footer",     "footerl",    "footerr",  "footerf", "generator",
      "listtable", "listoverridetable", "rsidtbl", "xmlnstbl", "themedata", "colorschememapping",
      "latentstyles", "datastore", "object", "filetbl", "revtbl", "fldinst", "footnote"};
  return std::find(std::begin(kDestinations), std::end(kDestinations), word) != std::end(kDestinations);
}

inline int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace detail

inline bool looks_like_rtf(std::string_view raw) { return raw.starts_with("{\\rtf"); }

/// Minimal RTF to plain text conversion. Group braces and control words (with
/// their numeric parameters) are dropped, header destinations are skipped
/// wholesale, \'hh escapes are decoded as Windows-1252 and \uN as Unicode.
inline std::string strip(std::string_view in) {
  struct GroupState {
    bool skip = false;
    int uc = 1;
  };
  std::vector<GroupState> stack{GroupState{}};
  std::string out;
  out.reserve(in.size());
  int fallback_pending = 0;

  auto emit = [&](char32_t cp) {
    if (stack.back().skip) return;
    if (fallback_pending > 0) {
      --fallback_pending;
      return;
    }
    text::append_utf8(out, cp);
  };
  auto emit_raw = [&](char c) {
    if (stack.back().skip) return;
    if (fallback_pending > 0) {
      --fallback_pending;
      return;
    }
    out += c;
  };

  std::size_t i = 0;
  while (i < in.size()) {
    const char c = in[i];
    if (c == '{') {
      stack.push_back(stack.back());
      ++i;
      continue;
    }
    if (c == '}') {
      if (stack.size() > 1) stack.pop_back();
      fallback_pending = 0;
      ++i;
      continue;
    }
    if (c == '\r' || c == '\n') {
      ++i;
      continue;
    }
    if (c != '\\') {
      emit_raw(c);
      ++i;
      continue;
    }
    // Control sequence.
    ++i;
    if (i >= in.size()) break;
    const char n = in[i];
    if (std::isalpha(static_cast<unsigned char>(n))) {
      std::size_t j = i;
      while (j < in.size() && std::isalpha(static_cast<unsigned char>(in[j]))) ++j;
      const std::string_view word = in.substr(i, j - i);
      bool has_param = false;
      long param = 0;
      bool negative = false;
      if (j < in.size() && in[j] == '-') {
        negative = true;
        ++j;
      }
      while (j < in.size() && std::isdigit(static_cast<unsigned char>(in[j]))) {
        has_param = true;
        param = param * 10 + (in[j] - '0');
        ++j;
      }
      if (negative) param = -param;
      if (j < in.size() && in[j] == ' ') ++j;
      i = j;

      if (detail::is_destination(word)) {
        stack.back().skip = true;
      } else if (word == "par" || word == "line" || word == "sect" || word == "page" || word == "row") {
        emit('\n');
      } else if (word == "tab" || word == "cell") {
        emit('\t');
      } else if (word == "uc" && has_param) {
        stack.back().uc = static_cast<int>(param);
      } else if (word == "u" && has_param) {
        emit(static_cast<char32_t>(param < 0 ? param + 65536 : param));
        if (!stack.back().skip) fallback_pending = stack.back().uc;
      } else if (word == "emdash") {
        emit(0x2014);
      } else if (word == "endash") {
        emit(0x2013);
      } else if (word == "lquote") {
        emit(0x2018);
      } else if (word == "rquote") {
        emit(0x2019);
      } else if (word == "ldblquote") {
        emit(0x201C);
      } else if (word == "rdblquote") {
        emit(0x201D);
      } else if (word == "bullet") {
        emit(0x2022);
      }
      continue;
    }
    ++i;
    switch (n) {
      case '*': stack.back().skip = true; break;
      case '\\': case '{': case '}': emit(static_cast<unsigned char>(n)); break;
      case '~': emit(0xA0); break;
      case '_': emit('-'); break;
      case '-': break;
      case '\n': case '\r': emit('\n'); break;
      case '\'': {
        if (i + 1 < in.size()) {
          const int hi = detail::hex_value(in[i]);
          const int lo = detail::hex_value(in[i + 1]);
          if (hi >= 0 && lo >= 0) {
            emit(detail::cp1252(static_cast<unsigned char>(hi * 16 + lo)));
            i += 2;
          }
        }
        break;
      }
      default: break;
    }
  }
  return out;
}

}  // namespace rtf

/// "\r\n" and lone "\r" become "\n".
inline std::string normalize_newlines(std::string_view in) {
  std::string out;
  out.reserve(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i] == '\r') {
      out += '\n';
      if (i + 1 < in.size() && in[i + 1] == '\n') ++i;
    } else {
      out += in[i];
    }
  }
  return out;
}

inline std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int k = 0; k < len; ++k) {
    out += kHex[md[k] >> 4];
    out += kHex[md[k] & 0xF];
  }
  return out;
}

/// First 16 hex digits of the SHA-256 of the normalized text.
inline std::string make_doc_id(std::string_view normalized_text) { return sha256_hex(normalized_text).substr(0, 16); }

/// Converts raw file bytes into normalized document text.
inline std::string normalize_document_text(std::string_view raw, std::string_view origin) {
  std::string body = rtf::looks_like_rtf(raw) ? rtf::strip(raw) : std::string(raw);
  body = normalize_newlines(body);
  if (!text::is_valid_utf8(body)) throw Error(Errc::EncodingError, "invalid UTF-8 in " + std::string(origin));
  if (text::trim(body).empty()) throw Error(Errc::EmptyDocument, "no visible text in " + std::string(origin));
  return body;
}

inline Document make_document(std::string text, std::string jurisdiction, std::string source_path) {
  Document doc;
  doc.doc_id = make_doc_id(text);
  doc.jurisdiction = std::move(jurisdiction);
  doc.text = std::move(text);
  doc.source_path = std::move(source_path);
  return doc;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::UnreadableFile, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(Errc::UnreadableFile, "read failure on " + path.string());
  return std::move(buf).str();
}

inline Document ingest(const std::filesystem::path& path, std::string jurisdiction) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) throw Error(Errc::UnreadableFile, "not a readable file: " + path.string());
  const std::string raw = read_file(path);
  return make_document(normalize_document_text(raw, path.string()), std::move(jurisdiction), path.generic_string());
}

struct SkippedFile {
  std::string source_path;
  Errc reason;
  std::string message;
};

struct IngestReport {
  std::vector<Document> documents;
  std::vector<SkippedFile> skipped;
  std::size_t id_collisions = 0;
};

/// Assigns "-2", "-3", ... suffixes to repeated doc_ids, in corpus order.
/// Returns the number of documents that collided with an earlier one.
inline std::size_t disambiguate_ids(std::vector<Document>& docs) {
  std::map<std::string, std::size_t> seen;
  std::size_t collisions = 0;
  for (auto& doc : docs) {
    const std::size_t n = ++seen[doc.doc_id];
    if (n > 1) {
      ++collisions;
      doc.doc_id += "-" + std::to_string(n);
    }
  }
  return collisions;
}

/// Ingests every .txt/.rtf file below `dir`. Files in a subdirectory take the
/// subdirectory's name as jurisdiction; top-level files take
/// `default_jurisdiction`. Files are visited in sorted relative-path order and
/// source paths are recorded relative to `dir`.
inline IngestReport ingest_directory(const std::filesystem::path& dir, const std::string& default_jurisdiction,
                                     unsigned workers = 0) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(Errc::UnreadableFile, "not a directory: " + dir.string());

  std::vector<fs::path> files;
  for (auto it = fs::recursive_directory_iterator(dir, ec); !ec && it != fs::recursive_directory_iterator();
       it.increment(ec)) {
    if (!it->is_regular_file()) continue;
    std::string ext = it->path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (ext == ".txt" || ext == ".rtf") files.push_back(fs::relative(it->path(), dir));
  }
  if (ec) throw Error(Errc::UnreadableFile, "cannot list " + dir.string() + ": " + ec.message());
  std::sort(files.begin(), files.end());

  struct Slot {
    std::optional<Document> doc;
    std::optional<SkippedFile> skip;
  };
  std::vector<Slot> slots(files.size());
  parallel_for(
      files.size(),
      [&](std::size_t i) {
        const fs::path& rel = files[i];
        const std::string jurisdiction =
            std::distance(rel.begin(), rel.end()) > 1 ? rel.begin()->string() : default_jurisdiction;
        try {
          Document doc = ingest(dir / rel, jurisdiction);
          doc.source_path = rel.generic_string();
          slots[i].doc = std::move(doc);
        } catch (const Error& e) {
          slots[i].skip = SkippedFile{rel.generic_string(), e.code(), e.what()};
        }
      },
      workers);

  IngestReport report;
  for (auto& slot : slots) {
    if (slot.doc) report.documents.push_back(std::move(*slot.doc));
    if (slot.skip) report.skipped.push_back(std::move(*slot.skip));
  }
  report.id_collisions = disambiguate_ids(report.documents);
  return report;
}

// corpus.jsonl

inline nlohmann::ordered_json to_json(const Document& doc) {
  return {{"doc_id", doc.doc_id}, {"jurisdiction", doc.jurisdiction}, {"source_path", doc.source_path}, {"text", doc.text}};
}

inline Document document_from_json(const nlohmann::json& j) {
  try {
    return Document{j.at("doc_id").get<std::string>(), j.at("jurisdiction").get<std::string>(),
                    j.at("text").get<std::string>(), j.at("source_path").get<std::string>()};
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("corpus record: ") + e.what());
  }
}

/// Reads a JSON-lines file, handing each parsed object to `fn`.
template <typename Fn>
void read_jsonl(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::UnreadableFile, "cannot open " + path.string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(Errc::ParseError, path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
    fn(j);
  }
}

template <typename Range>
void write_jsonl(const std::filesystem::path& path, const Range& records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::UnreadableFile, "cannot write " + path.string());
  for (const auto& r : records) out << r.dump() << '\n';
  if (!out) throw Error(Errc::UnreadableFile, "write failure on " + path.string());
}

inline void write_corpus(const std::filesystem::path& path, const std::vector<Document>& docs) {
  std::vector<nlohmann::ordered_json> rows;
  rows.reserve(docs.size());
  for (const auto& d : docs) rows.push_back(to_json(d));
  write_jsonl(path, rows);
}

inline std::vector<Document> read_corpus(const std::filesystem::path& path) {
  std::vector<Document> docs;
  read_jsonl(path, [&](const nlohmann::json& j) { docs.push_back(document_from_json(j)); });
  return docs;
}

}  // namespace courtnet
