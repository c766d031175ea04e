class Size256 extends Size {
    int getIntVal() {
        return 256;
    }
}
