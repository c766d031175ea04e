abstract class Size {
    abstract int getIntVal();
}
