class Size128 extends Size {
    int getIntVal() {
        return 128;
    }
}
