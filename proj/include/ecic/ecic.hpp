#pragma once

#include "ecic/bounds.hpp"
#include "ecic/column_search.hpp"
#include "ecic/construct.hpp"
#include "ecic/decoder.hpp"
#include "ecic/error.hpp"
#include "ecic/field.hpp"
#include "ecic/index_codes.hpp"
#include "ecic/instance.hpp"
#include "ecic/linalg.hpp"
#include "ecic/matrix_io.hpp"
