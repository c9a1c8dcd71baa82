#pragma once

#include <superlie/graded_space.hpp>
#include <superlie/scalar_linalg.hpp>
#include <superlie/cochain.hpp>
#include <superlie/literal_parser.hpp>
#include <superlie/cohomology.hpp>
#include <superlie/structure.hpp>
#include <superlie/extension.hpp>
#include <superlie/transform.hpp>
#include <superlie/deformation.hpp>
#include <superlie/catalog.hpp>
#include <superlie/verify.hpp>
