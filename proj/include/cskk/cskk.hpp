#pragma once
// Umbrella header: the full fibered-geometry verification library.

#include "cskk/errors.hpp"
#include "cskk/linalg.hpp"
#include "cskk/jet.hpp"
#include "cskk/chart.hpp"
#include "cskk/field.hpp"
#include "cskk/zweibein.hpp"
#include "cskk/connection.hpp"
#include "cskk/kaluza_klein.hpp"
#include "cskk/quadrature.hpp"
#include "cskk/frames.hpp"
#include "cskk/chern_simons.hpp"
#include "cskk/presets.hpp"
#include "cskk/suites.hpp"
#include "cskk/io.hpp"
