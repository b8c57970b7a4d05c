#pragma once

#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "addrx/document.hpp"

namespace addrx {

struct IngestError {
    enum class Kind { Syntax, Schema, Geometry, DuplicateId };
    Kind kind;
    std::string location;  // path into the input, e.g. "pages[0].lines[3].bbox"
    std::string message;
};

const char* to_string(IngestError::Kind kind);

class IngestException : public std::runtime_error {
  public:
    explicit IngestException(IngestError err);
    const IngestError& error() const { return err_; }

  private:
    IngestError err_;
};

// Parse the OCR-lines document format. Throws IngestException on the first
// structural failure; the returned Document satisfies all model invariants.
Document parse_document(std::istream& in);
Document parse_document(const std::string& bytes);
Document parse_document_file(const std::string& path);

// Reports every invariant violation, not just the first.
std::vector<IngestError> validate_document(const Document& d);

// Canonical serialization; parse(serialize(d)) == d.
std::string serialize_document(const Document& d);

}  // namespace addrx
