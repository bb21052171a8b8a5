#pragma once

#include "face_structure.hpp"
#include "relations.hpp"
#include "axioms.hpp"
#include "io.hpp"
#include "morphisms.hpp"
#include "constructions.hpp"
#include "globular.hpp"
#include "omega.hpp"
