class InconsistentItemTypes {
    public static void main(String[] args) {
        API.begin(100)
            .begin("200") // expect-error
            .end("x")
            .end("y")
            .asTeXStr();
    }
}
