#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace xwfrag {

// Minimal element tree: enough for the warehouse, schema and preset documents.
// Attribute order is preserved so documents serialize byte-stably.
struct XmlElement {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<XmlElement> children;
  std::string text;  // concatenated character data directly under this element
  int line = 0;      // source line of the start tag, 0 when built in memory

  XmlElement() = default;
  explicit XmlElement(std::string element_name) : name(std::move(element_name)) {}

  XmlElement& Attr(std::string key, std::string value) {
    attributes.emplace_back(std::move(key), std::move(value));
    return *this;
  }
  XmlElement& Append(XmlElement child) {
    children.push_back(std::move(child));
    return children.back();
  }

  const std::string* FindAttribute(std::string_view key) const;
  // Throws MalformedXml naming the element and line when absent.
  const std::string& RequireAttribute(std::string_view key) const;
};

// Throws Error(kMalformedXml) carrying the offending line.
XmlElement ParseXml(std::string_view document, const std::string& source_name);
XmlElement ParseXmlFile(const std::filesystem::path& path);

// Canonical writer: XML declaration, two-space indentation, LF line ends,
// self-closing empty elements, trailing newline.
std::string WriteXml(const XmlElement& root);
void WriteXmlFile(const XmlElement& root, const std::filesystem::path& path);

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view contents);

}  // namespace xwfrag
