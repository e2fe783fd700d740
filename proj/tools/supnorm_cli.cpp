#include <cstdio>
int main() { std::printf("supnorm cli placeholder\n"); return 0; }
