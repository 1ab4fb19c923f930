// placeholder; the acceptance suite is assembled after the unit suite is green
int main(){return 1;}
