#pragma once

// Everything except the command-line layer (cli.hpp), which needs CLI11 and
// nlohmann/json on the include path.

#include "canon.hpp"
#include "certs.hpp"
#include "core.hpp"
#include "error.hpp"
#include "formula.hpp"
#include "known_values.hpp"
#include "search.hpp"
#include "validity.hpp"
