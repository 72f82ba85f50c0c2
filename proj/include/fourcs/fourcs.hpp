#pragma once

#include "fourcs/base_constructions.hpp"
#include "fourcs/composition.hpp"
#include "fourcs/construct.hpp"
#include "fourcs/core.hpp"
#include "fourcs/errors.hpp"
#include "fourcs/field.hpp"
#include "fourcs/gdd.hpp"
#include "fourcs/gdd_search.hpp"
#include "fourcs/io.hpp"
#include "fourcs/packer.hpp"
#include "fourcs/rational.hpp"
#include "fourcs/scan.hpp"
