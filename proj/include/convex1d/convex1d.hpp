#pragma once

#include "convex1d/bitvector.hpp"
#include "convex1d/core.hpp"
#include "convex1d/enumerate.hpp"
#include "convex1d/errors.hpp"
#include "convex1d/geometry.hpp"
#include "convex1d/ordering.hpp"
#include "convex1d/reconstruct.hpp"
