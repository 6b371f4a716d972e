#pragma once

#include <optional>
#include <string>
#include <vector>

#include "strengthlab/field.hpp"
#include "strengthlab/forms.hpp"

namespace strengthlab {

// Hand-writable cubic input, e.g.
//
//   field p=5
//   vars x y
//   f = 1*x*x*x + 1*y*y*y
//
// Lines may carry '#' comments; the f-expression may continue over following
// lines. The field header may be omitted when a fallback spec is supplied
// (a conflicting header is an error, not silently overridden). The vars line
// may be omitted, in which case variables are taken in order of first
// appearance. Coefficients are integers, or [c0,c1,...] digit lists for
// extension fields; every monomial must have degree exactly 3, and `f = 0`
// denotes the zero form.
struct PolyDocument {
    FieldPtr field;
    std::vector<std::string> vars;
    CubicForm f;
};

PolyDocument parse_poly_text(const std::string& text,
                             const std::optional<FieldSpec>& fallback_field = {});

// Canonical writer: field header, vars line, terms in the form's sorted term
// order with coefficients as canonical codes. parse(write(f)) == f.
std::string write_poly_text(const CubicForm& f, const std::vector<std::string>& vars = {});

std::vector<std::string> default_var_names(std::size_t n);  // x1, x2, ...

}  // namespace strengthlab
