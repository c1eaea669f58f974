#pragma once

#include "fanofiber/constructions.hpp"
#include "fanofiber/error.hpp"
#include "fanofiber/exact_lp.hpp"
#include "fanofiber/fibrelike.hpp"
#include "fanofiber/io.hpp"
#include "fanofiber/lattice.hpp"
#include "fanofiber/mori.hpp"
#include "fanofiber/polytope.hpp"
#include "fanofiber/report.hpp"
#include "fanofiber/symmetry.hpp"
#include "fanofiber/toric.hpp"
