class DuplicateNewMap {
    public static void main(String[] args) {
        OurAPI.newMap()
            .newMap() // expect-error
            .build();
    }
}
