#include "xwfrag/xml.h"

#include <expat.h>

#include <fstream>
#include <memory>
#include <sstream>

#include "xwfrag/error.h"

namespace xwfrag {
namespace {

struct ParseState {
  XML_Parser parser = nullptr;
  std::vector<XmlElement*> stack;
  XmlElement root;
  bool have_root = false;
};

void OnStart(void* user, const XML_Char* name, const XML_Char** attrs) {
  auto* state = static_cast<ParseState*>(user);
  XmlElement* element;
  if (state->stack.empty()) {
    state->root = XmlElement(name);
    state->have_root = true;
    element = &state->root;
  } else {
    element = &state->stack.back()->Append(XmlElement(name));
  }
  element->line = static_cast<int>(XML_GetCurrentLineNumber(state->parser));
  for (int i = 0; attrs[i] != nullptr; i += 2) element->Attr(attrs[i], attrs[i + 1]);
  state->stack.push_back(element);
}

void OnEnd(void* user, const XML_Char*) {
  static_cast<ParseState*>(user)->stack.pop_back();
}

void OnText(void* user, const XML_Char* data, int len) {
  auto* state = static_cast<ParseState*>(user);
  if (!state->stack.empty()) state->stack.back()->text.append(data, static_cast<size_t>(len));
}

void AppendEscaped(std::string& out, std::string_view raw, bool attribute) {
  for (char c : raw) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"':
        if (attribute) out += "&quot;"; else out += c;
        break;
      case '\n':
        if (attribute) out += "&#10;"; else out += c;
        break;
      case '\t':
        if (attribute) out += "&#9;"; else out += c;
        break;
      default: out += c;
    }
  }
}

bool IsBlank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

void WriteElement(std::string& out, const XmlElement& e, int depth) {
  out.append(static_cast<size_t>(depth) * 2, ' ');
  out += '<';
  out += e.name;
  for (const auto& [key, value] : e.attributes) {
    out += ' ';
    out += key;
    out += "=\"";
    AppendEscaped(out, value, true);
    out += '"';
  }
  const bool has_text = !IsBlank(e.text);
  if (e.children.empty() && !has_text) {
    out += "/>\n";
    return;
  }
  out += '>';
  if (e.children.empty()) {
    AppendEscaped(out, e.text, false);
  } else {
    out += '\n';
    for (const auto& child : e.children) WriteElement(out, child, depth + 1);
    out.append(static_cast<size_t>(depth) * 2, ' ');
  }
  out += "</";
  out += e.name;
  out += ">\n";
}

}  // namespace

const std::string* XmlElement::FindAttribute(std::string_view key) const {
  for (const auto& [k, v] : attributes) {
    if (k == key) return &v;
  }
  return nullptr;
}

const std::string& XmlElement::RequireAttribute(std::string_view key) const {
  if (const std::string* v = FindAttribute(key)) return *v;
  throw Error(ErrorCode::kMalformedXml,
              "element <" + name + "> lacks required attribute '" + std::string(key) + "'", line);
}

XmlElement ParseXml(std::string_view document, const std::string& source_name) {
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(
      XML_ParserCreate("UTF-8"), &XML_ParserFree);
  if (!parser) throw Error(ErrorCode::kIoError, "cannot allocate XML parser");
  ParseState state;
  state.parser = parser.get();
  XML_SetUserData(parser.get(), &state);
  XML_SetElementHandler(parser.get(), &OnStart, &OnEnd);
  XML_SetCharacterDataHandler(parser.get(), &OnText);
  if (XML_Parse(parser.get(), document.data(), static_cast<int>(document.size()), XML_TRUE) ==
      XML_STATUS_ERROR) {
    throw Error(ErrorCode::kMalformedXml,
                source_name + ": " + XML_ErrorString(XML_GetErrorCode(parser.get())),
                static_cast<int>(XML_GetCurrentLineNumber(parser.get())),
                static_cast<int>(XML_GetCurrentColumnNumber(parser.get())) + 1);
  }
  if (!state.have_root) throw Error(ErrorCode::kMalformedXml, source_name + ": no root element");
  return std::move(state.root);
}

XmlElement ParseXmlFile(const std::filesystem::path& path) {
  return ParseXml(ReadFile(path), path.filename().string());
}

std::string WriteXml(const XmlElement& root) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  WriteElement(out, root, 0);
  return out;
}

void WriteXmlFile(const XmlElement& root, const std::filesystem::path& path) {
  WriteFile(path, WriteXml(root));
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

void WriteFile(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::kIoError, "short write to " + path.string());
}

}  // namespace xwfrag
