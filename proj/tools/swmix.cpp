#include "app.hpp"

int main(int argc, char** argv) { return swmix::app::main(argc, argv); }
