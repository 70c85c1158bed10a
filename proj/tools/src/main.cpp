#include "polyent_app/app.hpp"

#include <iostream>

int main(int argc, char** argv) { return polyent::app::run(argc, argv, std::cout, std::cerr); }
