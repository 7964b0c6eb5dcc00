#pragma once

#include "fatlines/error.hpp"
#include "fatlines/field.hpp"
#include "fatlines/matrix.hpp"
#include "fatlines/polyspace.hpp"
#include "fatlines/geometry.hpp"
#include "fatlines/symbolic.hpp"
#include "fatlines/classify.hpp"
#include "fatlines/configgen.hpp"
#include "fatlines/verify.hpp"
#include "fatlines/version.hpp"
