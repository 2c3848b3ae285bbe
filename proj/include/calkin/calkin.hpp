#pragma once

// Umbrella header: exact boundary-data analysis of composition operators on
// Hardy/Bergman-type spaces (which linear combinations are compact, with which
// essential-norm bounds) plus the numerical corroboration engine.

#include "calkin/bounds.hpp"
#include "calkin/curves.hpp"
#include "calkin/finite_section.hpp"
#include "calkin/io.hpp"
#include "calkin/path_probe.hpp"
